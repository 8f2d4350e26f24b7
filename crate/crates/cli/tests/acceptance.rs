//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use engel_core::catalog;
use engel_core::engel::{self, Scope, Side};
use engel_core::harness::{self, Outcome, Subjects, Verdict};
use engel_core::{Automorphism, FiniteGroup, Group};

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line {
        ok,
        detail: detail.into(),
    }
}

fn catalog_groups(max_order: usize, tier: Option<u8>) -> Vec<(FiniteGroup, u8)> {
    catalog::tier(tier)
        .map(|e| (e.build().expect("catalog builds"), e.tier))
        .filter(|(g, _)| g.order() <= max_order)
        .collect()
}

fn named(names: &[&str]) -> Vec<FiniteGroup> {
    names.iter().map(|n| catalog::lookup(n).expect("catalog name")).collect()
}

/// Pass/fail/skip counts and the first failure.
#[derive(Default)]
struct Count {
    pass: usize,
    fail: usize,
    skipped: usize,
    first: Option<String>,
}

impl Count {
    fn add(&mut self, what: impl FnOnce() -> String, v: &Verdict) {
        match v.outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Skipped => self.skipped += 1,
            Outcome::Fail => {
                self.fail += 1;
                if self.first.is_none() {
                    self.first = Some(format!("{}: {}", what(), v.witnesses.join("; ")));
                }
            }
        }
    }

    fn finish(&self, label: &str) -> Line {
        let mut d = format!("{} pass, {} fail, {} skipped {}", self.pass, self.fail, self.skipped, label);
        if let Some(f) = &self.first {
            d.push_str(&format!("; first failure {}", f));
        }
        line(self.fail == 0 && self.pass > 0, d)
    }
}

// Walks every step in a plain vector until the first repeat; no sharing.
fn oracle_cycle(seed: usize, step: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut seen = vec![seed];
    loop {
        let next = step(*seen.last().unwrap());
        if let Some(p) = seen.iter().position(|&u| u == next) {
            return seen.split_off(p);
        }
        seen.push(next);
    }
}

fn oracle_sink(scope: &[usize], h: usize, side: Side, step: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut out = vec![0];
    for &x in scope {
        match side {
            Side::Left => out.extend(oracle_cycle(x, |u| step(u, h))),
            Side::Right => out.extend(oracle_cycle(h, |u| step(u, x))),
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let mut compared = 0;
    let mut bad = Vec::new();
    for (g, _) in catalog_groups(60, None) {
        let whole = g.whole();
        let all: Vec<usize> = (0..g.order()).collect();
        for h in 0..g.order() {
            let aut = Automorphism::inner_by_index(&g, h);
            let ext = aut.extension().expect("small extension");
            let c = ext.carrier();
            let carrier_scope: Vec<usize> = (0..c.order()).collect();
            for side in [Side::Left, Side::Right] {
                let base = oracle_sink(&all, h, side, |u, x| g.commutator(u, x));
                let got = engel::sink(&g, h, &whole, side).unwrap().members;
                compared += 1;
                if got != base {
                    bad.push(format!("{} {} {:?} base", g.name(), g.label(h), side));
                }
                // In G<inner(h)> on the permutation carrier, seeded at the embedded φ.
                let mut in_ext: Vec<usize> = oracle_sink(&carrier_scope, ext.phi(), side, |u, x| c.commutator(u, x))
                    .into_iter()
                    .map(|u| {
                        let (b, i) = ext.split(u);
                        assert_eq!(i, 0, "sinks of phi lie in G");
                        b
                    })
                    .collect();
                in_ext.sort_unstable();
                let got = engel::aut_sink_in(&aut, Scope::Extension, side).unwrap().members;
                compared += 1;
                if got != in_ext {
                    bad.push(format!("{} {} {:?} extension", g.name(), g.label(h), side));
                }
            }
        }
    }
    let t = start.elapsed();
    line(
        bad.is_empty() && t < Duration::from_secs(60),
        format!("{} sinks compared, {} mismatches {:?}, {:.1?}", compared, bad.len(), bad.first(), t),
    )
}

fn criterion_2() -> Line {
    let mut n = Count::default();
    for (g, tier) in catalog_groups(100, None) {
        if !g.is_abelian() {
            continue;
        }
        let s = Subjects::new(&g, tier);
        for a in s.automorphisms() {
            let what = || format!("{} {}", g.name(), a.describe());
            n.add(what, &harness::abelian_sink_subgroup(a));
            n.add(what, &harness::abelian_sink_powers(a));
            n.add(what, &harness::abelian_sink_onto(a));
        }
    }
    n.finish("over abelian groups of order <= 100")
}

fn criterion_3() -> Line {
    let mut n = Count::default();
    for (g, _) in catalog_groups(200, None) {
        if !g.is_metabelian() {
            continue;
        }
        for x in 0..g.order() {
            n.add(|| format!("{} {}", g.name(), g.label(x)), &harness::metabelian_containment(&g, x));
        }
    }
    n.finish("over metabelian groups of order <= 200")
}

fn criterion_4() -> Line {
    let mut n = Count::default();
    let mut coprime = 0;
    for (g, tier) in catalog_groups(usize::MAX, Some(1)) {
        let s = Subjects::new(&g, tier);
        for a in s.automorphisms() {
            let what = || format!("{} {}", g.name(), a.describe());
            let b = harness::coprime_commutator_stable(a);
            if b.outcome != Outcome::Skipped {
                coprime += 1;
            }
            n.add(what, &harness::coprime_fixed_points(a));
            n.add(what, &b);
            n.add(what, &harness::coprime_decomposition(a));
        }
    }
    n.finish(&format!("over {} coprime pairs in tier 1", coprime))
}

fn criterion_5() -> Line {
    let start = Instant::now();
    let mut n = Count::default();
    for (g, _) in catalog_groups(200, Some(1)) {
        let all: Vec<usize> = (0..g.order()).collect();
        n.add(|| g.name().to_string(), &harness::baer(&g, &all));
    }
    let t = start.elapsed();
    let mut l = n.finish(&format!("tier-1 groups, {:.1?}", t));
    l.ok &= t < Duration::from_secs(300);
    l
}

fn criterion_6() -> Line {
    let mut n = Count::default();
    for (g, tier) in catalog_groups(usize::MAX, Some(1)) {
        if !g.is_abelian() {
            continue;
        }
        for a in Subjects::new(&g, tier).automorphisms() {
            n.add(|| format!("{} {}", g.name(), a.describe()), &harness::abelian_order(a));
        }
    }
    n.finish("abelian pairs with G = [G,phi] counted as pass")
}

fn nontrivial_inner<'g>(g: &'g FiniteGroup) -> Vec<Automorphism<'g>> {
    (1..g.order())
        .map(|x| Automorphism::inner_by_index(g, x))
        .filter(|a| !a.is_identity())
        .collect()
}

fn criterion_7() -> Line {
    let start = Instant::now();
    let mut n = Count::default();
    for g in named(&["A5", "A6", "PSL2(7)", "PSL2(11)"]) {
        for a in nontrivial_inner(&g) {
            let v = harness::generation(&a);
            // Simple groups satisfy G = [G, φ]; a skip here is a failure.
            let v = if v.outcome == Outcome::Skipped {
                Verdict::from_failures(vec!["not applicable".to_string()])
            } else {
                v
            };
            n.add(|| format!("{} {}", g.name(), a.describe()), &v);
        }
    }
    let t = start.elapsed();
    let mut l = n.finish(&format!("nontrivial inner automorphisms, {:.1?}", t));
    l.ok &= t < Duration::from_secs(600);
    l
}

fn criterion_8() -> Line {
    let mut n = Count::default();
    let mut sylows = 0;
    for g in named(&["A5", "A6", "PSL2(7)", "PSL2(11)", "PSL2(13)"]) {
        let cyc = harness::cyclic_sylows(&g);
        sylows += cyc.len();
        for a in nontrivial_inner(&g) {
            n.add(|| format!("{} {}", g.name(), a.describe()), &harness::cyclic_sylow_bound(&a, &cyc));
        }
    }
    let mut l = n.finish(&format!("nontrivial inner automorphisms, {} cyclic Sylow subgroups", sylows));
    l.ok &= sylows > 0;
    l
}

fn criterion_9() -> Line {
    let mut n = Count::default();
    for q in 2..=30u128 {
        for e in 2..=12u32 {
            n.add(|| format!("q={} e={}", q, e), &harness::zsigmondy_pair(q, e));
        }
    }
    n.finish("pairs 2 <= q <= 30, 2 <= e <= 12")
}

fn criterion_10() -> Line {
    let mut n = Count::default();
    for (g, _) in catalog_groups(usize::MAX, Some(1)) {
        n.add(|| g.name().to_string(), &harness::tensor_bound(&g));
    }
    n.finish("tier-1 groups, non-nilpotent skipped")
}

fn verify_stream(jobs: &str) -> (bool, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_engel"))
        .args(["verify", "--tier", "1", "--jobs", jobs])
        .env_remove("ENGEL_TIER")
        .output()
        .expect("engel runs");
    (out.status.success(), out.stdout)
}

fn criterion_11() -> Line {
    let (ok1, a) = verify_stream("1");
    let (ok4, b) = verify_stream("4");
    let lines = a.iter().filter(|&&c| c == b'\n').count();
    line(
        ok1 && ok4 && !a.is_empty() && a == b,
        format!("--jobs 1 and --jobs 4 streams identical: {} ({} records)", a == b, lines),
    )
}

type Criterion = (&'static str, fn() -> Line);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("sink correctness vs oracle", criterion_1),
        ("abelian sink suite", criterion_2),
        ("metabelian containment", criterion_3),
        ("coprime identities", criterion_4),
        ("Baer memberships", criterion_5),
        ("abelian equality |G| = m", criterion_6),
        ("generation by the left sink", criterion_7),
        ("cyclic Sylow TI and bound", criterion_8),
        ("Zsigmondy exceptions and orders", criterion_9),
        ("tensor bound", criterion_10),
        ("report determinism", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let l = f();
        if !l.ok {
            failed += 1;
        }
        println!("{} {:>2} {}: {}", if l.ok { "PASS" } else { "FAIL" }, k + 1, name, l.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", failed);
        ExitCode::FAILURE
    }
}
