//! Browser bindings: each export takes an algebra as JSON text and returns a
//! report as JSON text. Errors come back as `{"error": ...}`.

use std::sync::Arc;

use heartglue::cli::{remark_counterexamples, run_job, JobInput, JobKind};
use heartglue::corpus;
use heartglue::io::AlgebraFile;
use wasm_bindgen::prelude::*;

fn error_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

fn job(algebra_json: &str, window: i32) -> Result<JobInput, String> {
    let file = AlgebraFile::parse("input", algebra_json).map_err(|e| e.to_string())?;
    let alg = Arc::new(file.build("input").map_err(|e| e.to_string())?);
    let mut job = JobInput::projectives(alg);
    if window > 0 {
        job.window = i64::from(window);
    }
    Ok(job)
}

/// Report of `kind` on the projectives of the algebra, as pretty JSON.
pub fn report(kind: JobKind, algebra_json: &str, window: i32) -> String {
    match job(algebra_json, window) {
        Ok(j) => run_job(kind, &j).render(heartglue::cli::Format::Json),
        Err(e) => error_json(&e),
    }
}

/// Hom dimensions between the projectives; `window <= 0` picks the default.
#[wasm_bindgen]
pub fn ext_table(algebra_json: &str, window: i32) -> String {
    report(JobKind::ExtTable, algebra_json, window)
}

/// Iterated gluing of the point hearts of the projectives.
#[wasm_bindgen]
pub fn glue_hearts(algebra_json: &str, window: i32) -> String {
    report(JobKind::GlueHearts, algebra_json, window)
}

/// Dimension formula along the iterated gluing.
#[wasm_bindgen]
pub fn dim_formula(algebra_json: &str, window: i32) -> String {
    report(JobKind::DimFormula, algebra_json, window)
}

/// Endomorphism algebra of the projectives and its recovered presentation.
#[wasm_bindgen]
pub fn bondal_check(algebra_json: &str, window: i32) -> String {
    report(JobKind::BondalCheck, algebra_json, window)
}

#[wasm_bindgen]
pub fn counterexamples() -> String {
    match remark_counterexamples(None) {
        Ok(r) => r.render(heartglue::cli::Format::Json),
        Err(e) => error_json(&e.to_string()),
    }
}

/// Names of the bundled algebras, comma separated.
#[wasm_bindgen]
pub fn corpus_names() -> String {
    let mut names: Vec<&str> = corpus::CORPUS.to_vec();
    names.push("fork");
    names.join(",")
}

/// JSON text of a bundled algebra, or an empty string.
#[wasm_bindgen]
pub fn corpus_algebra(name: &str) -> String {
    corpus::bundled_text(name).unwrap_or_default().to_string()
}
