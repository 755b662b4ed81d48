//! JSON persistence of constructed code families.
//!
//! The document records everything needed to reproduce and audit a build:
//! ring, row type, constraint, seed, the generator rows in the hex-group
//! encoding, and the milestone list. Serialization is deterministic (fixed
//! field order, no timestamps).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greedy::{BuildStatus, CodeFamily, Constraint, Milestone};
use crate::hexfmt::{HexMatrixDocument, HexRow, RowKind};
use crate::ring::Ring;

pub const FAMILY_FORMAT: &str = "zmcodes.code-family.v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeFamilyDocument {
    pub format: String,
    pub ring: Ring,
    pub k1: usize,
    pub k2: usize,
    pub n_sym: usize,
    pub constraint: Constraint,
    pub seed: u64,
    pub distinct_columns: bool,
    pub status: BuildStatus,
    pub milestones: Vec<Milestone>,
    /// One string per generator row (A rows then B rows): space-separated
    /// 32-bit hex groups, LSB-first, exactly as in the hex matrix format.
    pub rows_hex: Vec<String>,
}

pub fn to_document(family: &CodeFamily) -> Result<CodeFamilyDocument> {
    let g = &family.generator;
    let hex = HexMatrixDocument::from_matrix(g, family.fixed_rows())?;
    let rows_hex = hex
        .rows
        .iter()
        .map(|r| {
            r.groups
                .iter()
                .map(|g| format!("{g:08X}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    Ok(CodeFamilyDocument {
        format: FAMILY_FORMAT.to_string(),
        ring: g.ring(),
        k1: g.k1(),
        k2: g.k2(),
        n_sym: g.n_sym(),
        constraint: family.constraint,
        seed: family.seed,
        distinct_columns: family.distinct_columns,
        status: family.status,
        milestones: family.milestones.clone(),
        rows_hex,
    })
}

pub fn from_document(doc: &CodeFamilyDocument) -> Result<CodeFamily> {
    if doc.format != FAMILY_FORMAT {
        return Err(Error::FamilyDocument(format!(
            "unknown format '{}', expected '{FAMILY_FORMAT}'",
            doc.format
        )));
    }
    if doc.rows_hex.len() != doc.k1 + doc.k2 {
        return Err(Error::FamilyDocument(format!(
            "{} hex rows for k1={} k2={}",
            doc.rows_hex.len(),
            doc.k1,
            doc.k2
        )));
    }
    let fixed = doc.constraint.fixed_rows();
    let mut rows = Vec::with_capacity(doc.rows_hex.len());
    for (i, line) in doc.rows_hex.iter().enumerate() {
        let mut groups = Vec::new();
        for tok in line.split_whitespace() {
            if tok.len() != 8 || !tok.chars().all(|c| c.is_ascii_hexdigit()) {
                return Err(Error::FamilyDocument(format!(
                    "row {}: '{tok}' is not an 8-digit hex group",
                    i + 1
                )));
            }
            groups.push(u32::from_str_radix(tok, 16).expect("validated hex"));
        }
        rows.push(HexRow {
            fixed: i < fixed,
            kind: if i < doc.k1 { RowKind::Z4 } else { RowKind::Binary },
            groups,
        });
    }
    let n_bits = doc.n_sym * doc.ring.bits_per_symbol();
    let hex = HexMatrixDocument {
        ring: doc.ring,
        n_bits,
        rows,
    };
    let (generator, _) = hex.to_matrix()?;
    Ok(CodeFamily {
        generator,
        milestones: doc.milestones.clone(),
        constraint: doc.constraint,
        seed: doc.seed,
        distinct_columns: doc.distinct_columns,
        status: doc.status,
    })
}

pub fn to_json(family: &CodeFamily) -> Result<String> {
    let doc = to_document(family)?;
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn from_json(text: &str) -> Result<CodeFamily> {
    let doc: CodeFamilyDocument = serde_json::from_str(text)?;
    from_document(&doc)
}
