//! Small reference data sets used by tests, examples and the CLI smoke runs.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::context::FormalContext;

/// The classic tourism context: nouns as objects, verb-derived adjectives as
/// attributes.
pub fn tourism() -> FormalContext {
    let objects = ["apartment", "car", "motor-bike", "excursion", "trip", "hotel"];
    let attributes = ["bookable", "rentable", "driveable", "rideable", "joinable"];
    let rows = ["XX...", "XXX..", "XXXX.", "X...X", "X...X", "X...."];
    context(&objects, &attributes, &rows)
}

/// Builds a context from `X`/`.` row strings.
pub fn context(objects: &[&str], attributes: &[&str], rows: &[&str]) -> FormalContext {
    let incidence = rows.iter().map(|r| r.chars().map(|c| c == 'X').collect()).collect();
    FormalContext::new(owned(objects), owned(attributes), incidence).expect("fixture context is well formed")
}

fn owned(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
