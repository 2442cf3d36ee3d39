//! Display names for small isomorphism classes.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::canon::{canonical_code, CanonicalCode, DEFAULT_MAX_ORDER};
use crate::closed_forms::Beta3Table;
use crate::graph::{named, Family, Graph};

fn family_names() -> &'static HashMap<CanonicalCode, String> {
    static NAMES: OnceLock<HashMap<CanonicalCode, String>> = OnceLock::new();
    NAMES.get_or_init(|| {
        let mut names = HashMap::new();
        let mut add = |g: Graph, name: String| {
            if let Ok(code) = canonical_code(&g) {
                names.entry(code).or_insert(name);
            }
        };
        for n in 0..=DEFAULT_MAX_ORDER {
            add(named(Family::Complete, n).unwrap(), format!("K{n}"));
        }
        for n in 2..=DEFAULT_MAX_ORDER {
            add(Graph::empty(n), format!("{n}K1"));
        }
        for n in 3..=DEFAULT_MAX_ORDER {
            add(named(Family::Path, n).unwrap(), format!("P{n}"));
        }
        for n in 3..DEFAULT_MAX_ORDER {
            add(named(Family::Star, n).unwrap(), format!("S{n}"));
        }
        for n in 4..=DEFAULT_MAX_ORDER {
            add(named(Family::Cycle, n).unwrap(), format!("C{n}"));
        }
        names
    })
}

/// `"P3 (G4)"`, `"K5"`, `"G14"`, or `None` for an unnamed class.
pub fn display_name(code: &CanonicalCode) -> Option<String> {
    let family = family_names().get(code);
    let label = Beta3Table::golden().get(code).map(|e| &e.name);
    match (family, label) {
        (Some(f), Some(l)) => Some(format!("{f} ({l})")),
        (Some(f), None) => Some(f.clone()),
        (None, Some(l)) => Some(l.clone()),
        (None, None) => None,
    }
}
