//! The bundled knot table: Rolfsen knots up to 8 crossings plus the unknot,
//! the Hopf link and the Whitehead link, as PD codes.
//!
//! The data file has one record per line, `name<TAB>pd-text`; `#` starts a
//! comment. `KH_TABLE_PATH` overrides the bundled data.

use crate::diagram::{DiagramError, LinkDiagram};
use std::collections::BTreeMap;

const BUNDLED: &str = include_str!("../data/knots.pdt");

#[derive(Clone, Debug)]
pub struct KnotTable {
    entries: BTreeMap<String, String>,
    order: Vec<String>,
}

impl KnotTable {
    /// The bundled table, or the file named by `KH_TABLE_PATH` if set.
    pub fn load() -> Result<Self, DiagramError> {
        match std::env::var("KH_TABLE_PATH") {
            Ok(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    DiagramError::Parse(format!("cannot read {path}: {e}"))
                })?;
                Self::parse(&text)
            }
            Err(_) => Self::parse(BUNDLED),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut entries = BTreeMap::new();
        let mut order = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, pd) = line.split_once('\t').ok_or_else(|| {
                DiagramError::Parse(format!("table line without tab: {line:?}"))
            })?;
            if entries.insert(name.trim().to_string(), pd.trim().to_string()).is_some() {
                return Err(DiagramError::Parse(format!("duplicate table entry {name:?}")));
            }
            order.push(name.trim().to_string());
        }
        Ok(KnotTable { entries, order })
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn pd_text(&self, name: &str) -> Option<&str> {
        self.entries.get(name).map(|s| s.as_str())
    }

    pub fn get(&self, name: &str) -> Option<Result<LinkDiagram, DiagramError>> {
        self.entries.get(name).map(|pd| LinkDiagram::parse_pd(pd))
    }

    /// All entries in table order, parsed.
    pub fn diagrams(&self) -> Result<Vec<(String, LinkDiagram)>, DiagramError> {
        self.order
            .iter()
            .map(|name| Ok((name.clone(), LinkDiagram::parse_pd(&self.entries[name])?)))
            .collect()
    }

    /// Entries whose diagrams have at most `max_crossings` crossings.
    pub fn diagrams_up_to(
        &self,
        max_crossings: usize,
    ) -> Result<Vec<(String, LinkDiagram)>, DiagramError> {
        Ok(self
            .diagrams()?
            .into_iter()
            .filter(|(_, d)| d.crossing_count() <= max_crossings)
            .collect())
    }
}
