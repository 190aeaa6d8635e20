//! Bundled example algebras.
//!
//! `HEARTGLUE_CORPUS_DIR` points at a directory of replacement files with the
//! same names.

use std::sync::Arc;

use crate::io::{AlgebraFile, FormatError};
use crate::path_algebra::PathAlgebra;

pub const CORPUS_DIR_VAR: &str = "HEARTGLUE_CORPUS_DIR";

const BUNDLED: [(&str, &str); 6] = [
    ("a2", include_str!("../corpus/a2.json")),
    ("a3", include_str!("../corpus/a3.json")),
    ("a3_rel", include_str!("../corpus/a3_rel.json")),
    ("kronecker", include_str!("../corpus/kronecker.json")),
    ("square", include_str!("../corpus/square.json")),
    ("fork", include_str!("../corpus/fork.json")),
];

/// Names of the corpus proper, in load order.
pub const CORPUS: [&str; 5] = ["a2", "a3", "a3_rel", "kronecker", "square"];

#[derive(Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub algebra: Arc<PathAlgebra>,
}

fn source(name: &str) -> Result<(String, String), FormatError> {
    if let Ok(dir) = std::env::var(CORPUS_DIR_VAR) {
        let path = std::path::Path::new(&dir).join(format!("{name}.json"));
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(&path).map_err(|source| FormatError::Io {
            path: shown.clone(),
            source,
        })?;
        return Ok((shown, text));
    }
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| FormatError::Invalid {
            path: format!("{name}.json"),
            message: "no such corpus member".into(),
        })?;
    Ok((format!("corpus/{name}.json"), text.to_string()))
}

/// The bundled JSON text of a member, ignoring the directory override.
pub fn bundled_text(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// One corpus algebra by name; `fork` is also available here.
pub fn load(name: &str) -> Result<Arc<PathAlgebra>, FormatError> {
    let (path, text) = source(name)?;
    Ok(Arc::new(AlgebraFile::parse(&path, &text)?.build(&path)?))
}

pub fn load_corpus() -> Result<Vec<CorpusEntry>, FormatError> {
    CORPUS
        .iter()
        .map(|&name| Ok(CorpusEntry { name, algebra: load(name)? }))
        .collect()
}

/// The quiver with arrows `1 -> 2` and `f: 1 -> 3`.
pub fn fork() -> Result<Arc<PathAlgebra>, FormatError> {
    load("fork")
}
