//! Command line front end and HTTP game service for `chipfire`.

pub mod commands;
pub mod input;
pub mod server;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] chipfire::Error),
    #[error("{0}")]
    Input(String),
}
