//! Reading graphs, divisors and certificates from files or family names.

use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use chipfire::certificates::{Certificate, CertificateJson};
use chipfire::divisor::DivisorJson;
use chipfire::generators;
use chipfire::{Divisor, Multigraph};

use crate::CliError;

fn read_source(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(source).map_err(|e| CliError::Input(format!("{source}: {e}")))
}

/// A graph from a JSON file, `-` for stdin, or a family such as
/// `icosahedron` or `cycle:7`.
pub fn graph(source: &str) -> Result<Arc<Multigraph>, CliError> {
    if source != "-" && !Path::new(source).exists() {
        let (family, size) = match source.split_once(':') {
            Some((f, s)) => {
                let n = s
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad size in `{source}`")))?;
                (f, Some(n))
            }
            None => (source, None),
        };
        return generators::by_name(family, size)
            .map(Arc::new)
            .map_err(|e| CliError::Input(format!("{source}: no such file, and {e}")));
    }
    let text = read_source(source)?;
    Ok(Arc::new(Multigraph::from_json_str(&text)?))
}

/// A divisor from a JSON file or an inline `{"chips": [...]}` / `[...]`.
pub fn divisor(g: &Arc<Multigraph>, source: &str) -> Result<Divisor, CliError> {
    let text = if source.trim_start().starts_with(['{', '[']) {
        source.to_string()
    } else {
        read_source(source)?
    };
    let json: DivisorJson = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(first) => match serde_json::from_str::<Vec<i64>>(&text) {
            Ok(chips) => DivisorJson { chips },
            Err(_) => return Err(CliError::Input(format!("divisor: {first}"))),
        },
    };
    Ok(json.bind(g.clone())?)
}

pub fn certificate(g: &Arc<Multigraph>, source: &str) -> Result<Certificate, CliError> {
    let text = read_source(source)?;
    let bad = |e: serde_json::Error| CliError::Input(format!("certificate: {e}"));
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    // accept a bare certificate or one wrapped with its graph
    if let Some(inner) = value.get_mut("certificate") {
        value = inner.take();
    }
    let json: CertificateJson = serde_json::from_value(value).map_err(bad)?;
    Ok(json.bind(g)?)
}
