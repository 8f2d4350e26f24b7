//! Observed sink sizes against group orders over a catalog tier.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::{tier_entries, Subjects};
use crate::automorphism::Automorphism;
use crate::engel::{self, Scope};
use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub group: String,
    pub order: usize,
    pub phi: String,
    pub comm_order: usize,
    pub is_onto: bool,
    pub m_left: usize,
    pub m_right_ext: usize,
    pub m_right_base: usize,
    #[serde(skip)]
    pub simple: bool,
}

impl SurveyRow {
    pub fn new(aut: &Automorphism<'_>, simple: bool) -> Self {
        let g = aut.group();
        let comm = aut.commutator_subgroup();
        let size = |scope, side| {
            engel::aut_sink_in(aut, scope, side)
                .expect("whole group is invariant")
                .len()
        };
        SurveyRow {
            group: g.name().to_string(),
            order: g.order(),
            phi: aut.describe(),
            comm_order: comm.order(),
            is_onto: comm.is_whole(),
            m_left: size(Scope::Base, engel::Side::Left),
            m_right_ext: size(Scope::Extension, engel::Side::Right),
            m_right_base: size(Scope::Base, engel::Side::Right),
            simple,
        }
    }
}

/// One row per automorphism subject of every group in the tier, in catalog
/// and subject order.
pub fn survey(t: Option<u8>) -> Result<Vec<SurveyRow>> {
    let per_group: Vec<Vec<SurveyRow>> = tier_entries(t)
        .par_iter()
        .map(|entry| -> Result<Vec<SurveyRow>> {
            let g = entry.build()?;
            let simple = g.is_simple() && !g.is_abelian();
            let s = Subjects::new(&g, entry.tier);
            Ok(s.automorphisms().iter().map(|a| SurveyRow::new(a, simple)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_group.into_iter().flatten().collect())
}

pub fn write_csv<W: Write>(rows: &[SurveyRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

/// Largest `|G|` seen for a sink size `m`, over rows with `G = [G, φ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extremal {
    pub m: usize,
    pub order: usize,
    pub group: String,
    pub phi: String,
}

/// Extremes keyed by `m_right_ext` over all onto rows, and by
/// `m_right_base` over onto rows of nonabelian simple groups. Ties keep the
/// first row.
pub fn extremal_table(rows: &[SurveyRow]) -> (Vec<Extremal>, Vec<Extremal>) {
    let pick = |key: &dyn Fn(&SurveyRow) -> Option<usize>| {
        let mut best: BTreeMap<usize, Extremal> = BTreeMap::new();
        for r in rows.iter().filter(|r| r.is_onto) {
            let Some(m) = key(r) else { continue };
            let better = best.get(&m).is_none_or(|b| r.order > b.order);
            if better {
                best.insert(
                    m,
                    Extremal {
                        m,
                        order: r.order,
                        group: r.group.clone(),
                        phi: r.phi.clone(),
                    },
                );
            }
        }
        best.into_values().collect::<Vec<_>>()
    };
    let ext = pick(&|r| Some(r.m_right_ext));
    let base = pick(&|r| r.simple.then_some(r.m_right_base));
    (ext, base)
}
