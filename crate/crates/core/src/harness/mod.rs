//! Exhaustive verification checks over the catalog and the bound survey.
//!
//! Every check is a pure function of a catalog group and its subjects, so a
//! report stream depends only on the selected checks and tier. Records are
//! emitted check-major, then in catalog order, then in subject order.

mod checks;
mod survey;

use std::cell::OnceCell;
use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::{enumerate_automorphisms, Automorphism, AUTOMORPHISM_SEARCH_LIMIT};
use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};

pub use checks::*;
pub use survey::{extremal_table, survey, write_csv, Extremal, SurveyRow};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

/// Result of one check on one subject. `Fail` always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub reason: Option<String>,
    pub witnesses: Vec<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            outcome: Outcome::Pass,
            reason: None,
            witnesses: Vec::new(),
        }
    }

    pub fn vacuous() -> Self {
        Verdict {
            witnesses: vec!["vacuous".to_string()],
            ..Verdict::pass()
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Verdict {
            outcome: Outcome::Skipped,
            reason: Some(reason.into()),
            witnesses: Vec::new(),
        }
    }

    /// Pass when `failures` is empty, otherwise fail with them as witnesses.
    pub fn from_failures(failures: Vec<String>) -> Self {
        if failures.is_empty() {
            Verdict::pass()
        } else {
            Verdict {
                outcome: Outcome::Fail,
                reason: None,
                witnesses: failures,
            }
        }
    }

    /// Attaches data witnesses to a pass.
    pub fn with_data(mut self, data: Vec<String>) -> Self {
        if self.outcome == Outcome::Pass {
            self.witnesses.extend(data);
        }
        self
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.outcome == Outcome::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub schema: u32,
    pub check: &'static str,
    pub group: String,
    pub subject: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub witnesses: Vec<String>,
}

impl Record {
    fn new(check: &'static str, group: &str, subject: String, v: Verdict) -> Self {
        debug_assert!(v.outcome != Outcome::Fail || !v.witnesses.is_empty());
        Record {
            schema: REPORT_SCHEMA,
            check,
            group: group.to_string(),
            subject,
            outcome: v.outcome,
            reason: v.reason,
            witnesses: v.witnesses,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// The group and the elements and automorphisms a check sweeps.
///
/// Tier 1 sweeps every element and every automorphism when the automorphism
/// group can be listed, otherwise every inner automorphism. Higher tiers use
/// one representative per conjugacy class: sinks of conjugate elements are
/// conjugate, so every check outcome is a class function.
pub struct Subjects<'g> {
    pub group: &'g FiniteGroup,
    pub tier: u8,
    elements: Vec<usize>,
    automorphisms: OnceCell<Vec<Automorphism<'g>>>,
}

impl<'g> Subjects<'g> {
    pub fn new(group: &'g FiniteGroup, tier: u8) -> Self {
        let elements = if tier <= 1 {
            (0..group.order()).collect()
        } else {
            class_representatives(group)
        };
        Subjects {
            group,
            tier,
            elements,
            automorphisms: OnceCell::new(),
        }
    }

    /// Every element, with every inner automorphism, whatever the tier.
    pub fn exhaustive_inner(group: &'g FiniteGroup) -> Self {
        let s = Subjects {
            group,
            tier: 1,
            elements: (0..group.order()).collect(),
            automorphisms: OnceCell::new(),
        };
        let _ = s.automorphisms.set(distinct_inner(group, &s.elements));
        s
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn automorphisms(&self) -> &[Automorphism<'g>] {
        self.automorphisms.get_or_init(|| {
            if self.tier <= 1 && self.group.order() <= AUTOMORPHISM_SEARCH_LIMIT {
                enumerate_automorphisms(self.group).expect("order within search limit")
            } else {
                distinct_inner(self.group, &self.elements)
            }
        })
    }
}

fn class_representatives(g: &FiniteGroup) -> Vec<usize> {
    let mut reps: Vec<usize> = g
        .conjugacy_classes()
        .iter()
        .map(|c| *c.iter().min().expect("classes are nonempty"))
        .collect();
    reps.sort_unstable();
    reps
}

fn distinct_inner<'g>(g: &'g FiniteGroup, by: &[usize]) -> Vec<Automorphism<'g>> {
    let mut seen = HashSet::new();
    by.iter()
        .map(|&x| Automorphism::inner_by_index(g, x))
        .filter(|a| seen.insert(a.table().to_vec()))
        .collect()
}

type GroupRunner = fn(&Subjects<'_>) -> Vec<(String, Verdict)>;
type StandaloneRunner = fn() -> Vec<(String, Verdict)>;

#[derive(Clone, Copy)]
enum Runner {
    Group(GroupRunner),
    Standalone(StandaloneRunner),
}

pub struct Check {
    pub id: &'static str,
    pub summary: &'static str,
    run: Runner,
}

impl Check {
    /// Whether the check sweeps catalog groups rather than numbers.
    pub fn is_group_check(&self) -> bool {
        matches!(self.run, Runner::Group(_))
    }

    pub fn run_on(&self, subjects: &Subjects<'_>) -> Vec<Record> {
        match self.run {
            Runner::Group(f) => f(subjects)
                .into_iter()
                .map(|(s, v)| Record::new(self.id, subjects.group.name(), s, v))
                .collect(),
            Runner::Standalone(_) => Vec::new(),
        }
    }

    pub fn run_standalone(&self) -> Vec<Record> {
        match self.run {
            Runner::Standalone(f) => f()
                .into_iter()
                .map(|(s, v)| Record::new(self.id, "-", s, v))
                .collect(),
            Runner::Group(_) => Vec::new(),
        }
    }
}

macro_rules! check {
    ($id:expr, $summary:expr, group $f:expr) => {
        Check {
            id: $id,
            summary: $summary,
            run: Runner::Group($f),
        }
    };
    ($id:expr, $summary:expr, standalone $f:expr) => {
        Check {
            id: $id,
            summary: $summary,
            run: Runner::Standalone($f),
        }
    };
}

static CHECKS: &[Check] = &[
    check!("lemma-2.1", "nilpotent G: |γ_i/γ_{i+1}| divides |G/G'|^i", group checks::run_tensor_bound),
    check!("lemma-2.2a", "coprime φ: fixed points of G/N lift for φ-invariant normal N", group checks::run_coprime_a),
    check!("lemma-2.2b", "coprime φ: [[G,φ],φ] = [G,φ]", group checks::run_coprime_b),
    check!("lemma-2.2c", "coprime φ, abelian G: G = [G,φ] × C_G(φ)", group checks::run_coprime_c),
    check!("lemma-2.3", "p-automorphism of elementary abelian V: |V| ≤ |C_V(α)|^|α|", group checks::run_jordan_bound),
    check!("lemma-2.4a", "abelian V: ℒ_V(α) = ℒ_{V⟨α⟩}(α) is a subgroup", group checks::run_abelian_sink_a),
    check!("lemma-2.4b", "abelian V: ℒ(α^k) ⊆ ℒ(α)", group checks::run_abelian_sink_b),
    check!("lemma-2.4c", "abelian V: V = [V,α] implies V = ℒ(α)", group checks::run_abelian_sink_c),
    check!("lemma-2.5", "metabelian G: ℒ(g⁻¹) ⊆ ℛ(g)", group checks::run_metabelian),
    check!("cor-2.6", "involution τ: ⟨g⟩ ⊆ ℒ_G(τ) and ℒ_{⟨g⟩⟨τ⟩}(τ) ⊆ ℛ_{G⟨τ⟩}(τ) for g in J_G(τ)", group checks::run_involution),
    check!("lemma-3.1", "simple G, φ ≠ 1: cyclic Sylow S is TI and |S| ≤ (m-1)^2", group checks::run_cyclic_sylow),
    check!("lemma-3.2", "A_n, φ ≠ 1: a prime n/2 < p ≤ n has cyclic Sylow and n < 2(m-1)^2", group checks::run_alternating),
    check!("lemma-3.5", "k ≥ 4: a Zsigmondy prime r for (p, ke) has ke ≤ r - 1", standalone checks::run_zsigmondy_chain),
    check!("lemma-4.1", "abelian G = [G,φ]: |G| = |ℛ_{G⟨φ⟩}(φ)|", group checks::run_abelian_order),
    check!("generation", "G = [G,φ] implies G = ⟨ℒ(φ)⟩", group checks::run_generation),
    check!("baer", "ℒ(g) = 1 implies g ∈ F(G); ℛ(g) = 1 implies g ∈ ζ_∞(G)", group checks::run_baer),
    check!("quotient", "image of ℒ(g) in G/N is the left sink of gN", group checks::run_quotient),
    check!("residual", "G/γ_∞(G) is nilpotent; records |γ_∞| and max |ℒ(g)|", group checks::run_residual),
    check!("zsigmondy", "Zsigmondy primes exist outside the exceptions and have order e", standalone checks::run_zsigmondy),
];

pub fn registry() -> &'static [Check] {
    CHECKS
}

pub fn find(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}

/// Checks matching any of the comma-separated glob patterns, in registry
/// order. A pattern matching nothing is an error.
pub fn select(patterns: &str) -> Result<Vec<&'static Check>> {
    let mut chosen = vec![false; CHECKS.len()];
    for raw in patterns.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let pat = glob::Pattern::new(raw).map_err(|e| Error::Parse(format!("check pattern {:?}: {}", raw, e)))?;
        let mut hit = false;
        for (k, c) in CHECKS.iter().enumerate() {
            if pat.matches(c.id) {
                chosen[k] = true;
                hit = true;
            }
        }
        if !hit {
            return Err(Error::Parse(format!("unknown check id {:?}", raw)));
        }
    }
    if !chosen.iter().any(|&c| c) {
        return Err(Error::Parse("no checks selected".to_string()));
    }
    Ok(CHECKS
        .iter()
        .zip(chosen)
        .filter(|(_, c)| *c)
        .map(|(c, _)| c)
        .collect())
}

/// Catalog entries of tier `t` (every tier for `None`).
pub fn tier_entries(t: Option<u8>) -> Vec<&'static CatalogEntry> {
    catalog::tier(t).collect()
}

/// Runs `checks` over the catalog tier. Groups are processed in parallel on
/// the current rayon pool; the result order does not depend on the pool.
pub fn run(checks: &[&'static Check], t: Option<u8>) -> Result<Vec<Record>> {
    let group_checks: Vec<&Check> = checks.iter().copied().filter(|c| c.is_group_check()).collect();
    let per_group: Vec<Vec<Vec<Record>>> = if group_checks.is_empty() {
        Vec::new()
    } else {
        tier_entries(t)
            .par_iter()
            .map(|entry| -> Result<Vec<Vec<Record>>> {
                let g = entry.build()?;
                let subjects = Subjects::new(&g, entry.tier);
                Ok(group_checks.iter().map(|c| c.run_on(&subjects)).collect())
            })
            .collect::<Result<_>>()?
    };
    let standalone: Vec<Vec<Record>> = checks
        .par_iter()
        .map(|c| if c.is_group_check() { Vec::new() } else { c.run_standalone() })
        .collect();
    let mut out = Vec::new();
    let mut gk = 0;
    for (k, c) in checks.iter().enumerate() {
        if c.is_group_check() {
            for records in &per_group {
                out.extend(records[gk].iter().cloned());
            }
            gk += 1;
        } else {
            out.extend(standalone[k].iter().cloned());
        }
    }
    Ok(out)
}

/// One JSON object per line, newline terminated.
pub fn to_jsonl(records: &[Record]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&r.to_json());
        s.push('\n');
    }
    s
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

pub fn tally(records: &[Record]) -> Tally {
    let mut t = Tally::default();
    for r in records {
        match r.outcome {
            Outcome::Pass => t.pass += 1,
            Outcome::Fail => t.fail += 1,
            Outcome::Skipped => t.skipped += 1,
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let ids: HashSet<&str> = CHECKS.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), CHECKS.len());
    }

    #[test]
    fn selection_by_glob() {
        let ids: Vec<&str> = select("lemma-2.*").unwrap().iter().map(|c| c.id).collect();
        assert_eq!(ids.first(), Some(&"lemma-2.1"));
        assert!(ids.contains(&"lemma-2.4c"));
        assert!(!ids.contains(&"lemma-3.1"));
        assert_eq!(select("baer, quotient").unwrap().len(), 2);
        assert!(select("bogus").is_err());
        assert!(select("").is_err());
    }

    #[test]
    fn class_subjects_in_higher_tiers() {
        let g = catalog::alternating(5).unwrap();
        let s = Subjects::new(&g, 2);
        assert_eq!(s.elements().len(), 5);
        assert_eq!(s.automorphisms().len(), 5);
        let s = Subjects::new(&g, 1);
        assert_eq!(s.elements().len(), 60);
        assert_eq!(s.automorphisms().len(), 120);
        let e = Subjects::exhaustive_inner(&g);
        assert_eq!(e.automorphisms().len(), 60);
    }

    #[test]
    fn record_shape() {
        let r = Record::new("baer", "S3", "*".to_string(), Verdict::skipped("why"));
        assert_eq!(
            r.to_json(),
            r#"{"schema":1,"check":"baer","group":"S3","subject":"*","outcome":"skipped","reason":"why","witnesses":[]}"#
        );
        let r = Record::new("baer", "S3", "*".to_string(), Verdict::vacuous());
        assert!(!r.to_json().contains("reason"));
    }
}
