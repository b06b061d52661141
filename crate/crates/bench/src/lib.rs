//! Shared fixtures for the criterion benches.

use wefe::catalog::{self, CatalogEntry};

pub fn entry(id: &str) -> CatalogEntry {
    catalog::build_default(id).unwrap_or_else(|e| panic!("{id}: {e}"))
}
