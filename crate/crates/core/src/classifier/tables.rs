//! The spectrum-type table and the family table for `4n` qubits, with rows
//! reached by product states marked (only computed for four qubits).

use std::collections::BTreeMap;
use std::fmt;

use crate::config::RunConfig;
use crate::partitions::{enumerate_sjnf_types, enumerate_spectrum_types, JordanLabel, SpectrumSignature};

use super::products::product_label_sets;
use super::ClassifyError;

#[derive(Debug, Clone)]
pub struct SpectrumRow {
    pub xi: SpectrumSignature,
    /// 1-based `◁` index when a product state has this `Ξ`.
    pub product_mark: Option<usize>,
    pub families: Vec<FamilyEntry>,
}

#[derive(Debug, Clone)]
pub struct FamilyEntry {
    pub theta: JordanLabel,
    /// 1-based `‡` index when a product state has this `ϑ`.
    pub product_mark: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub n: u32,
    pub rows: Vec<SpectrumRow>,
}

impl TableReport {
    pub fn spectrum_count(&self) -> usize {
        self.rows.len()
    }

    pub fn family_count(&self) -> usize {
        self.rows.iter().map(|r| r.families.len()).sum()
    }

    pub fn families(&self) -> impl Iterator<Item = &FamilyEntry> {
        self.rows.iter().flat_map(|r| r.families.iter())
    }

    pub fn row(&self, xi: &SpectrumSignature) -> Option<&SpectrumRow> {
        self.rows.iter().find(|r| &r.xi == xi)
    }
}

/// Builds both tables. Product marks are only filled in for `n = 1`.
pub fn emit_tables(n: u32, config: &RunConfig) -> Result<TableReport, ClassifyError> {
    let products = if n == 1 { Some(product_label_sets(config)?) } else { None };

    let mut by_xi: BTreeMap<SpectrumSignature, Vec<JordanLabel>> = BTreeMap::new();
    for label in enumerate_sjnf_types(n) {
        by_xi.entry(label.xi()).or_default().push(label);
    }

    let mut rows = Vec::new();
    let (mut spectrum_marks, mut family_marks) = (0, 0);
    let mut types = enumerate_spectrum_types(n);
    types.sort();
    for xi in types {
        let mut labels = by_xi.remove(&xi).unwrap_or_default();
        labels.sort();
        let product_mark = products.as_ref().filter(|p| p.spectrum.contains(&xi)).map(|_| {
            spectrum_marks += 1;
            spectrum_marks
        });
        let families = labels
            .into_iter()
            .map(|theta| {
                let product_mark = products.as_ref().filter(|p| p.jordan.contains(&theta)).map(|_| {
                    family_marks += 1;
                    family_marks
                });
                FamilyEntry { theta, product_mark }
            })
            .collect();
        rows.push(SpectrumRow { xi, product_mark, families });
    }
    Ok(TableReport { n, rows })
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Spectrum types for {} qubits: {}", 4 * self.n, self.spectrum_count())?;
        for (i, row) in self.rows.iter().enumerate() {
            write!(f, "  SP{:<3} {}", i + 1, row.xi)?;
            if let Some(m) = row.product_mark {
                write!(f, "  ◁{m}")?;
            }
            writeln!(f)?;
        }
        writeln!(f)?;
        writeln!(f, "Families: {}", self.family_count())?;
        for row in &self.rows {
            let mark = row.product_mark.map(|m| format!(" ◁{m}")).unwrap_or_default();
            writeln!(f, "  {}{}", row.xi, mark)?;
            for e in &row.families {
                let mark = e.product_mark.map(|m| format!("  ‡{m}")).unwrap_or_default();
                writeln!(f, "      {}{}", e.theta, mark)?;
            }
        }
        Ok(())
    }
}
