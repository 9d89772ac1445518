//! HTTP API for interactive Dollar Game and Gonality Game sessions.
//!
//! Every route lives under `/api/v1`. Each session sits behind its own
//! async mutex, so moves on one session are serialized while different
//! sessions proceed independently. On graphs above [`SYNC_VERTEX_LIMIT`]
//! vertices the engine's debt placement runs as a background job; the
//! session reports `"pending": true` until it lands.

use std::collections::HashMap;
use std::path::{Path as FsPath, PathBuf};
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chipfire::game::{GameError, GameKind, GameSession, Hint, Phase, SessionRecord, SessionView};
use chipfire::graph::GraphJson;
use chipfire::{generators, Multigraph};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tokio::task::JoinHandle;
use tower_http::services::ServeDir;

/// Largest graph whose engine moves run inside the request.
pub const SYNC_VERTEX_LIMIT: usize = 20;

struct Slot {
    session: GameSession,
    job: Option<JoinHandle<()>>,
}

type SlotRef = Arc<tokio::sync::Mutex<Slot>>;

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<String, SlotRef>>>,
    store: Option<Arc<PathBuf>>,
}

impl AppState {
    pub fn in_memory() -> Self {
        AppState::default()
    }

    /// Keeps one JSON log per session in `dir` and reloads any found there.
    pub fn persistent(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        let state = AppState {
            sessions: Arc::default(),
            store: Some(Arc::new(dir.clone())),
        };
        for entry in std::fs::read_dir(&dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                let loaded = std::fs::read_to_string(&path)
                    .ok()
                    .and_then(|t| serde_json::from_str::<SessionRecord>(&t).ok())
                    .and_then(|r| GameSession::from_record(&r).ok());
                match loaded {
                    Some(s) => state.insert(s),
                    None => eprintln!("skipping unreadable session log {}", path.display()),
                }
            }
        }
        Ok(state)
    }

    fn insert(&self, session: GameSession) {
        let id = session.id().to_string();
        let slot = Arc::new(tokio::sync::Mutex::new(Slot { session, job: None }));
        self.sessions.lock().expect("session map").insert(id, slot);
    }

    fn slot(&self, id: &str) -> Result<SlotRef, ApiError> {
        self.sessions
            .lock()
            .expect("session map")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(id.to_string()))
    }

    fn persist(&self, session: &GameSession) {
        if let Some(dir) = &self.store {
            let path = dir.join(format!("{}.json", session.id()));
            let text = serde_json::to_string_pretty(&session.record()).expect("records serialize");
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("could not save {}: {e}", path.display());
            }
        }
    }

    fn forget(&self, id: &str) -> Option<SlotRef> {
        let slot = self.sessions.lock().expect("session map").remove(id);
        if let Some(dir) = &self.store {
            let _ = std::fs::remove_file(dir.join(format!("{id}.json")));
        }
        slot
    }
}

#[derive(Debug)]
pub enum ApiError {
    NotFound(String),
    BadRequest(String),
    Busy,
    Game(GameError),
}

impl From<GameError> for ApiError {
    fn from(e: GameError) -> Self {
        ApiError::Game(e)
    }
}

impl From<chipfire::Error> for ApiError {
    fn from(e: chipfire::Error) -> Self {
        ApiError::Game(GameError::Engine(e))
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::BadRequest(e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::NotFound(id) => (StatusCode::NOT_FOUND, json!({"error": format!("no session `{id}`")})),
            ApiError::BadRequest(msg) => (StatusCode::BAD_REQUEST, json!({"error": msg})),
            ApiError::Busy => (
                StatusCode::CONFLICT,
                json!({"error": "the engine is still choosing its move", "pending": true}),
            ),
            ApiError::Game(GameError::OutOfPhase(phase)) => (
                StatusCode::CONFLICT,
                json!({"error": format!("move not allowed in phase {phase:?}"), "phase": phase}),
            ),
            ApiError::Game(e) => (StatusCode::UNPROCESSABLE_ENTITY, json!({"error": e.to_string()})),
        };
        (status, Json(body)).into_response()
    }
}

#[derive(Serialize)]
pub struct SessionResponse {
    #[serde(flatten)]
    pub view: SessionView,
    pub pending: bool,
}

fn respond(slot: &Slot) -> Json<SessionResponse> {
    Json(SessionResponse {
        view: slot.session.view(),
        pending: slot.job.as_ref().is_some_and(|j| !j.is_finished()),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    #[serde(default = "default_kind")]
    pub kind: GameKind,
    #[serde(default)]
    pub graph: Option<GraphJson>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub size: Option<usize>,
    /// Chip budget for a Gonality Game.
    #[serde(default)]
    pub budget: Option<u64>,
    /// Starting divisor for a Dollar Game.
    #[serde(default)]
    pub chips: Option<Vec<i64>>,
}

fn default_kind() -> GameKind {
    GameKind::Gonality
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceBody {
    pub chips: Vec<i64>,
}

/// Omit `vertex` to let the engine play Player B.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct DebtBody {
    #[serde(default)]
    pub vertex: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FireBody {
    #[serde(default)]
    pub set: Option<Vec<usize>>,
    #[serde(default)]
    pub vertex: Option<usize>,
}

fn big(g: &Multigraph) -> bool {
    g.vertex_count() > SYNC_VERTEX_LIMIT
}

/// Runs `f` inline on small graphs and on the blocking pool otherwise.
async fn compute<T, F>(large: bool, f: F) -> T
where
    T: Send + 'static,
    F: FnOnce() -> T + Send + 'static,
{
    if large {
        tokio::task::spawn_blocking(f).await.expect("engine task panicked")
    } else {
        f()
    }
}

async fn create(
    State(state): State<AppState>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionResponse>), ApiError> {
    let Json(body) = body?;
    let graph = match (&body.graph, &body.family) {
        (Some(g), None) => Multigraph::from_json(g)?,
        (None, Some(f)) => generators::by_name(f, body.size)?,
        _ => return Err(ApiError::BadRequest("give exactly one of `graph` and `family`".into())),
    };
    let graph = Arc::new(graph);
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = match body.kind {
        GameKind::Gonality => {
            let budget = body
                .budget
                .ok_or_else(|| ApiError::BadRequest("a gonality game needs a chip `budget`".into()))?;
            GameSession::new_gonality(id, graph, budget)?
        }
        GameKind::Dollar => {
            let chips = body
                .chips
                .ok_or_else(|| ApiError::BadRequest("a dollar game needs starting `chips`".into()))?;
            let large = big(&graph);
            compute(large, move || GameSession::new_dollar(id, graph, chips)).await?
        }
    };
    state.persist(&session);
    let slot = Slot { session, job: None };
    let resp = respond(&slot);
    state.insert(slot.session);
    Ok((StatusCode::CREATED, resp))
}

async fn show(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionResponse>, ApiError> {
    let slot = state.slot(&id)?;
    let guard = slot.lock().await;
    Ok(respond(&guard))
}

/// Applies a move to a copy of the session and commits it on success.
async fn mutate<F>(state: &AppState, id: &str, f: F) -> Result<Json<SessionResponse>, ApiError>
where
    F: FnOnce(&mut GameSession) -> Result<(), GameError> + Send + 'static,
{
    let slot = state.slot(id)?;
    let mut guard = slot.lock().await;
    if guard.job.as_ref().is_some_and(|j| !j.is_finished()) {
        return Err(ApiError::Busy);
    }
    let mut session = guard.session.clone();
    let large = big(session.graph());
    let session = compute(large, move || f(&mut session).map(|_| session)).await?;
    state.persist(&session);
    guard.session = session;
    Ok(respond(&guard))
}

async fn place(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<PlaceBody>, JsonRejection>,
) -> Result<Json<SessionResponse>, ApiError> {
    let Json(body) = body?;
    mutate(&state, &id, move |s| s.place(body.chips)).await
}

async fn debt(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Option<Json<DebtBody>>,
) -> Result<(StatusCode, Json<SessionResponse>), ApiError> {
    let body = body.map(|Json(b)| b).unwrap_or_default();
    if let Some(v) = body.vertex {
        return Ok((StatusCode::OK, mutate(&state, &id, move |s| s.place_debt(v)).await?));
    }
    let slot = state.slot(&id)?;
    let mut guard = slot.lock().await;
    if guard.job.as_ref().is_some_and(|j| !j.is_finished()) {
        return Err(ApiError::Busy);
    }
    if guard.session.phase() != Phase::Sabotage {
        return Err(GameError::OutOfPhase(guard.session.phase()).into());
    }
    if !big(guard.session.graph()) {
        let mut session = guard.session.clone();
        session.engine_debt()?;
        state.persist(&session);
        guard.session = session;
        return Ok((StatusCode::OK, respond(&guard)));
    }
    let session = guard.session.clone();
    let job_slot = slot.clone();
    let job_state = state.clone();
    guard.job = Some(tokio::spawn(async move {
        let result = tokio::task::spawn_blocking(move || {
            let mut s = session;
            s.engine_debt().map(|_| s)
        })
        .await;
        let mut guard = job_slot.lock().await;
        match result {
            Ok(Ok(s)) => {
                job_state.persist(&s);
                guard.session = s;
            }
            Ok(Err(e)) => eprintln!("engine move failed: {e}"),
            Err(e) => eprintln!("engine task failed: {e}"),
        }
        guard.job = None;
    }));
    Ok((StatusCode::ACCEPTED, respond(&guard)))
}

async fn fire(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<FireBody>, JsonRejection>,
) -> Result<Json<SessionResponse>, ApiError> {
    let Json(body) = body?;
    let set = match (body.set, body.vertex) {
        (Some(set), None) => set,
        (None, Some(v)) => vec![v],
        _ => return Err(ApiError::BadRequest("give exactly one of `set` and `vertex`".into())),
    };
    mutate(&state, &id, move |s| s.fire(&set)).await
}

async fn resign(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionResponse>, ApiError> {
    mutate(&state, &id, |s| s.resign()).await
}

async fn hint(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Hint>, ApiError> {
    let slot = state.slot(&id)?;
    let guard = slot.lock().await;
    let session = guard.session.clone();
    let large = big(session.graph());
    Ok(Json(compute(large, move || session.hint()).await?))
}

async fn close(State(state): State<AppState>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    let slot = state.forget(&id).ok_or(ApiError::NotFound(id))?;
    if let Some(job) = slot.lock().await.job.take() {
        job.abort();
    }
    Ok(StatusCode::NO_CONTENT)
}

pub fn router(state: AppState, static_dir: Option<&FsPath>) -> Router {
    let api = Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show).delete(close))
        .route("/sessions/{id}/place", post(place))
        .route("/sessions/{id}/debt", post(debt))
        .route("/sessions/{id}/fire", post(fire))
        .route("/sessions/{id}/resign", post(resign))
        .route("/sessions/{id}/hint", get(hint))
        .with_state(state);
    let app = Router::new().nest("/api/v1", api);
    match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    }
}

pub async fn serve(host: &str, port: u16, state: AppState, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state, static_dir.as_deref()))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
