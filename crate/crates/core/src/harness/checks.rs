//! One function per check and subject; the `run_*` wrappers sweep a group.

use super::{Subjects, Verdict};
use crate::automorphism::Automorphism;
use crate::engel::{self, Scope, Side};
use crate::group::{FiniteGroup, Group, QuotientGroup, Subgroup};
use crate::numtheory;
use crate::structure;

type Rows = Vec<(String, Verdict)>;

const WHOLE: &str = "*";

fn whole_group(v: Verdict) -> Rows {
    vec![(WHOLE.to_string(), v)]
}

fn per_aut(s: &Subjects<'_>, f: impl Fn(&Automorphism<'_>) -> Verdict) -> Rows {
    s.automorphisms().iter().map(|a| (a.describe(), f(a))).collect()
}

fn per_element(s: &Subjects<'_>, f: impl Fn(usize) -> Verdict) -> Rows {
    s.elements().iter().map(|&x| (s.group.label(x), f(x))).collect()
}

fn labels(g: &impl Group, xs: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<String> = xs.into_iter().take(4).map(|x| g.label(x)).collect();
    v.join(" ")
}

fn sink_members(r: crate::Result<engel::EngelSink>) -> Vec<usize> {
    r.expect("whole group is invariant under every automorphism").members
}

fn subset(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

fn is_elementary_abelian(g: &FiniteGroup) -> Option<usize> {
    let e = g.exponent();
    (g.is_abelian() && numtheory::is_prime(e as u128)).then_some(e)
}

fn log_p(mut n: usize, p: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// `n | base^i`, compared prime by prime.
fn divides_power(n: usize, base: usize, i: usize) -> bool {
    numtheory::factorize(n as u128).into_iter().all(|(p, a)| {
        let (pb, _) = numtheory::p_part(base as u128, p);
        let b = log_p(pb as usize, p as usize);
        b * i >= a as usize
    })
}

pub fn tensor_bound(g: &FiniteGroup) -> Verdict {
    if !g.is_nilpotent().0 {
        return Verdict::skipped("not nilpotent");
    }
    let series = g.lower_central_series();
    if series.len() < 2 {
        return Verdict::vacuous();
    }
    let ab = g.order() / series[1].order();
    let failures = (1..series.len())
        .filter_map(|i| {
            let q = series[i - 1].order() / series[i].order();
            (!divides_power(q, ab, i)).then(|| format!("i={} quotient={} abelianization={}", i, q, ab))
        })
        .collect();
    Verdict::from_failures(failures)
}

fn coprime(aut: &Automorphism<'_>) -> bool {
    numtheory::gcd(aut.group().order() as u128, aut.order() as u128) == 1
}

const NOT_COPRIME: &str = "order(phi) not coprime to |G|";

/// Every φ-fixed coset of a φ-invariant normal `N` contains a fixed point.
pub fn coprime_fixed_points(aut: &Automorphism<'_>) -> Verdict {
    if !coprime(aut) {
        return Verdict::skipped(NOT_COPRIME);
    }
    let g = aut.group();
    let c = aut.fixed_subgroup();
    let mut failures = Vec::new();
    for n in aut.invariant_normal_subgroups() {
        let order = n.order();
        let q = QuotientGroup::new(g, n).expect("invariant normal subgroups are normal");
        let mut covered = vec![false; q.order()];
        for &x in c.members() {
            covered[q.project(x)] = true;
        }
        for (coset, &rep) in q.representatives().iter().enumerate() {
            if q.project(aut.apply(rep)) == coset && !covered[coset] {
                failures.push(format!("|N|={} coset={}", order, g.label(rep)));
            }
        }
    }
    Verdict::from_failures(failures)
}

pub fn coprime_commutator_stable(aut: &Automorphism<'_>) -> Verdict {
    if !coprime(aut) {
        return Verdict::skipped(NOT_COPRIME);
    }
    let k = aut.commutator_subgroup();
    let kk = aut.commutator_subgroup_of(&k);
    if kk.members() == k.members() {
        Verdict::pass()
    } else {
        Verdict::from_failures(vec![format!("|[G,phi]|={} |[G,phi,phi]|={}", k.order(), kk.order())])
    }
}

pub fn coprime_decomposition(aut: &Automorphism<'_>) -> Verdict {
    let g = aut.group();
    if !g.is_abelian() {
        return Verdict::skipped("not abelian");
    }
    if !coprime(aut) {
        return Verdict::skipped(NOT_COPRIME);
    }
    let k = aut.commutator_subgroup();
    let c = aut.fixed_subgroup();
    let meet = k.intersection(&c);
    if meet.is_trivial() && k.order() * c.order() == g.order() {
        Verdict::pass()
    } else {
        Verdict::from_failures(vec![format!(
            "|[G,phi]|={} |C|={} |meet|={}",
            k.order(),
            c.order(),
            meet.order()
        )])
    }
}

pub fn jordan_bound(aut: &Automorphism<'_>) -> Verdict {
    let g = aut.group();
    let Some(p) = is_elementary_abelian(g) else {
        return Verdict::skipped("not elementary abelian");
    };
    let k = aut.order();
    if !is_power_of(k, p) {
        return Verdict::skipped("not a p-automorphism");
    }
    let d = log_p(g.order(), p);
    let c = log_p(aut.fixed_subgroup().order(), p);
    if d <= c * k {
        Verdict::pass()
    } else {
        Verdict::from_failures(vec![format!("|V|={}^{} |C_V|={}^{} order={}", p, d, p, c, k)])
    }
}

pub fn abelian_sink_subgroup(aut: &Automorphism<'_>) -> Verdict {
    let g = aut.group();
    if !g.is_abelian() {
        return Verdict::skipped("not abelian");
    }
    let base = sink_members(engel::aut_left_sink(aut, Scope::Base));
    let ext = sink_members(engel::aut_left_sink(aut, Scope::Extension));
    let mut failures = Vec::new();
    if base != ext {
        failures.push(format!("|L_V|={} |L_ext|={}", base.len(), ext.len()));
    }
    let closure = g.subgroup_generated(&base);
    if closure.order() != base.len() {
        failures.push(format!("<L> order {} > |L| = {}", closure.order(), base.len()));
    }
    Verdict::from_failures(failures)
}

pub fn abelian_sink_powers(aut: &Automorphism<'_>) -> Verdict {
    if !aut.group().is_abelian() {
        return Verdict::skipped("not abelian");
    }
    let l = sink_members(engel::aut_left_sink(aut, Scope::Base));
    let failures = (1..=aut.order())
        .filter_map(|k| {
            let lk = sink_members(engel::aut_left_sink(&aut.power(k), Scope::Base));
            let extra = subset(&lk, &l);
            (!extra.is_empty()).then(|| format!("k={} outside={}", k, labels(aut.group(), extra)))
        })
        .collect();
    Verdict::from_failures(failures)
}

pub fn abelian_sink_onto(aut: &Automorphism<'_>) -> Verdict {
    let g = aut.group();
    if !g.is_abelian() {
        return Verdict::skipped("not abelian");
    }
    if !aut.commutator_subgroup().is_whole() {
        return Verdict::skipped("[V,phi] != V");
    }
    let l = sink_members(engel::aut_left_sink(aut, Scope::Base));
    let missing = subset(&(0..g.order()).collect::<Vec<_>>(), &l);
    if missing.is_empty() {
        Verdict::pass()
    } else {
        Verdict::from_failures(vec![format!("missing={}", labels(g, missing))])
    }
}

pub fn metabelian_containment(g: &FiniteGroup, x: usize) -> Verdict {
    let whole = g.whole();
    let l = engel::left_sink(g, g.inv(x), &whole).expect("G is normal in G");
    let r = engel::right_sink(g, x, &whole).expect("G is normal in G");
    let extra = subset(&l.members, &r.members);
    if extra.is_empty() {
        Verdict::pass()
    } else {
        Verdict::from_failures(vec![format!("outside={}", labels(g, extra))])
    }
}

/// `J_G(τ)`: odd-order elements inverted by `τ`, identity included.
pub fn inverted_odd_elements(aut: &Automorphism<'_>) -> Vec<usize> {
    let g = aut.group();
    (0..g.order())
        .filter(|&x| g.element_order(x) % 2 == 1 && aut.apply(x) == g.inv(x))
        .collect()
}

pub fn involution_case(aut: &Automorphism<'_>) -> Verdict {
    if aut.order() != 2 {
        return Verdict::skipped("order(tau) != 2");
    }
    let g = aut.group();
    let j = inverted_odd_elements(aut);
    if j.len() <= 1 {
        return Verdict::vacuous();
    }
    let lg = sink_members(engel::aut_left_sink(aut, Scope::Base));
    let r_ext = sink_members(engel::aut_right_sink(aut, Scope::Extension));
    let mut failures = Vec::new();
    for &x in &j[1..] {
        let cyc = g.subgroup_generated(&[x]);
        let local = engel::aut_sink(aut, &cyc, false, Side::Left).expect("tau inverts x");
        let outside = subset(cyc.members(), &local.members);
        if !outside.is_empty() {
            failures.push(format!("g={} <g> not in L_<g>: {}", g.label(x), labels(g, outside)));
        }
        let outside = subset(&local.members, &lg);
        if !outside.is_empty() {
            failures.push(format!("g={} L_<g> not in L_G: {}", g.label(x), labels(g, outside)));
        }
        let ext = engel::aut_sink(aut, &cyc, true, Side::Left).expect("tau inverts x");
        let outside = subset(&ext.members, &r_ext);
        if !outside.is_empty() {
            failures.push(format!("g={} L_<g><tau> not in R_ext: {}", g.label(x), labels(g, outside)));
        }
    }
    Verdict::from_failures(failures)
}

/// Cyclic Sylow subgroups of a group with their TI status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSylow {
    pub prime: usize,
    pub order: usize,
    pub is_ti: bool,
}

pub fn cyclic_sylows(g: &FiniteGroup) -> Vec<CyclicSylow> {
    structure::sylow_subgroups(g)
        .into_iter()
        .filter(|s| s.is_cyclic)
        .map(|s| CyclicSylow {
            prime: s.prime,
            order: s.subgroup.order(),
            is_ti: s.is_ti(),
        })
        .collect()
}

fn is_nonabelian_simple(g: &FiniteGroup) -> bool {
    g.is_simple() && !g.is_abelian()
}

/// `|ℛ_G(φ)|` with seeds over `G`.
pub fn right_sink_base_size(aut: &Automorphism<'_>) -> usize {
    sink_members(engel::aut_right_sink(aut, Scope::Base)).len()
}

pub fn cyclic_sylow_bound(aut: &Automorphism<'_>, sylows: &[CyclicSylow]) -> Verdict {
    if aut.is_identity() {
        return Verdict::skipped("trivial automorphism");
    }
    let m = right_sink_base_size(aut);
    let bound = (m - 1) * (m - 1);
    let mut failures = Vec::new();
    for s in sylows {
        if !s.is_ti {
            failures.push(format!("p={} cyclic Sylow not TI", s.prime));
        }
        if s.order > bound {
            failures.push(format!("p={} |S|={} m={}", s.prime, s.order, m));
        }
    }
    Verdict::from_failures(failures).with_data(vec![format!("m={}", m)])
}

/// Degree `n` of a catalog name `A<n>`.
pub fn alternating_degree(name: &str) -> Option<usize> {
    name.strip_prefix('A').and_then(|r| r.parse().ok()).filter(|&n| n >= 5)
}

pub fn alternating_bound(aut: &Automorphism<'_>, n: usize) -> Verdict {
    if aut.is_identity() {
        return Verdict::skipped("trivial automorphism");
    }
    let g = aut.group();
    let p = numtheory::bertrand_prime(n as u128).expect("n >= 5") as usize;
    let mut failures = Vec::new();
    if 2 * p <= n || p > n {
        failures.push(format!("p={} outside (n/2, n]", p));
    }
    let s = structure::sylow(g, p);
    if !s.is_cyclic || s.subgroup.order() != p {
        failures.push(format!("p={} Sylow order {}", p, s.subgroup.order()));
    }
    let m = right_sink_base_size(aut);
    let sq = (m - 1) * (m - 1);
    if p > sq {
        failures.push(format!("p={} m={}", p, m));
    }
    if n >= 2 * sq {
        failures.push(format!("n={} m={}", n, m));
    }
    Verdict::from_failures(failures).with_data(vec![format!("p={}", p), format!("m={}", m)])
}

pub fn abelian_order(aut: &Automorphism<'_>) -> Verdict {
    let g = aut.group();
    if !g.is_abelian() {
        return Verdict::skipped("not abelian");
    }
    if !aut.commutator_subgroup().is_whole() {
        return Verdict::skipped("[G,phi] != G");
    }
    let m = sink_members(engel::aut_right_sink(aut, Scope::Extension)).len();
    if m == g.order() {
        Verdict::pass()
    } else {
        Verdict::from_failures(vec![format!("|G|={} m={}", g.order(), m)])
    }
}

pub fn generation(aut: &Automorphism<'_>) -> Verdict {
    let g = aut.group();
    if !aut.commutator_subgroup().is_whole() {
        return Verdict::skipped("[G,phi] != G");
    }
    let l = sink_members(engel::aut_left_sink(aut, Scope::Base));
    let h = g.subgroup_generated(&l);
    if h.is_whole() {
        Verdict::pass()
    } else {
        Verdict::from_failures(vec![format!("|<L>|={} |G|={}", h.order(), g.order())])
    }
}

/// Engel elements among `elements` lie in `F(G)` (left) and `ζ_∞(G)` (right).
/// Counts of Engel elements and the two subgroups are recorded as data.
pub fn baer(g: &FiniteGroup, elements: &[usize]) -> Verdict {
    let f = structure::fitting_subgroup(g);
    let z = g.hypercentre();
    let whole = g.whole();
    let (mut left, mut right) = (0, 0);
    let mut failures = Vec::new();
    for &x in elements {
        if engel::is_left_engel(g, x, &whole).expect("G is normal in G") {
            left += 1;
            if !f.contains(x) {
                failures.push(format!("left Engel {} outside F(G)", g.label(x)));
            }
        }
        if engel::is_right_engel(g, x, &whole).expect("G is normal in G") {
            right += 1;
            if !z.contains(x) {
                failures.push(format!("right Engel {} outside hypercentre", g.label(x)));
            }
        }
    }
    Verdict::from_failures(failures).with_data(vec![
        format!("left_engel={}", left),
        format!("fitting={}", f.order()),
        format!("right_engel={}", right),
        format!("hypercentre={}", z.order()),
    ])
}

/// For each proper nontrivial normal `N` and each element, the left sink of
/// `xN` in `G/N` is the image of `ℒ(x)`.
pub fn quotient_compatibility(g: &FiniteGroup, elements: &[usize]) -> Verdict {
    let normals: Vec<Subgroup<'_, FiniteGroup>> = g
        .normal_subgroups()
        .into_iter()
        .filter(|n| !n.is_trivial() && !n.is_whole())
        .collect();
    if normals.is_empty() {
        return Verdict::vacuous();
    }
    let whole = g.whole();
    let mut failures = Vec::new();
    for n in &normals {
        for &x in elements {
            let q = engel::sink_image_under_quotient(g, x, &whole, n.clone(), Side::Left).expect("N is normal");
            if !q.agrees() {
                failures.push(format!("x={} |N|={}", g.label(x), n.order()));
            }
        }
    }
    Verdict::from_failures(failures)
}

/// `G/γ_∞(G)` is nilpotent; `|γ_∞|` and the largest `|ℒ(g)|` are data.
pub fn residual(g: &FiniteGroup, elements: &[usize]) -> Verdict {
    let r = g.nilpotent_residual();
    let order = r.order();
    let whole = g.whole();
    let m0 = elements
        .iter()
        .map(|&x| engel::left_sink(g, x, &whole).expect("G is normal in G").len())
        .max()
        .unwrap_or(1);
    let q = QuotientGroup::new(g, r).expect("lower central terms are normal");
    let failures = if q.is_nilpotent().0 {
        Vec::new()
    } else {
        vec![format!("G/residual of order {} not nilpotent", q.order())]
    };
    Verdict::from_failures(failures).with_data(vec![format!("residual={}", order), format!("max_left={}", m0)])
}

fn is_mersenne(q: u128) -> bool {
    (q + 1).is_power_of_two()
}

/// Emptiness exactly at the exceptions; every prime has order `e` mod itself.
pub fn zsigmondy_pair(q: u128, e: u32) -> Verdict {
    let z = numtheory::zsigmondy(q, e).expect("sweep stays within u128");
    let exceptional = (q == 2 && e == 6) || (e == 2 && is_mersenne(q));
    let mut failures = Vec::new();
    if z.primes.is_empty() != exceptional {
        failures.push(format!("primes={:?} exceptional={}", z.primes, exceptional));
    }
    if z.exception.is_some() != exceptional {
        failures.push(format!("exception={:?}", z.exception.map(|x| x.describe())));
    }
    for &r in &z.primes {
        let o = numtheory::multiplicative_order(q, r).expect("r does not divide q");
        if o != e as u128 {
            failures.push(format!("r={} order={}", r, o));
        }
    }
    Verdict::from_failures(failures)
}

/// For `k ≥ 4` and `ke > 6`, with `m` the least value satisfying
/// `r ≤ (m-1)^2`, every inequality of `k ≤ ke ≤ r - 1 ≤ (m-1)^2 - 1` holds.
pub fn zsigmondy_chain(p: u128, k: u32, e: u32) -> Verdict {
    let ke = k * e;
    if k < 4 || ke <= 6 {
        return Verdict::skipped("needs k >= 4 and ke > 6");
    }
    let z = numtheory::zsigmondy(p, ke).expect("sweep stays within u128");
    let Some(&r) = z.primes.first() else {
        return Verdict::from_failures(vec![format!("no Zsigmondy prime for ({}, {})", p, ke)]);
    };
    let mut m = 2u128;
    while (m - 1) * (m - 1) < r {
        m += 1;
    }
    let rep = numtheory::zsigmondy_bound_check(p, k, e, m).expect("checked above");
    let mut failures = Vec::new();
    if rep.exception.is_some() {
        failures.push(format!("exceptional pair ({}, {})", p, ke));
    }
    if rep.ke_below_r != Some(true) {
        failures.push(format!("ke={} r={}", ke, r));
    }
    if rep.r_within_m != Some(true) || !rep.k_within_bound {
        failures.push(format!("k={} m={} bound={}", k, m, rep.k_bound));
    }
    Verdict::from_failures(failures).with_data(vec![format!("r={}", r)])
}

pub(super) fn run_tensor_bound(s: &Subjects<'_>) -> Rows {
    whole_group(tensor_bound(s.group))
}

pub(super) fn run_coprime_a(s: &Subjects<'_>) -> Rows {
    per_aut(s, coprime_fixed_points)
}

pub(super) fn run_coprime_b(s: &Subjects<'_>) -> Rows {
    per_aut(s, coprime_commutator_stable)
}

pub(super) fn run_coprime_c(s: &Subjects<'_>) -> Rows {
    if !s.group.is_abelian() {
        return whole_group(Verdict::skipped("not abelian"));
    }
    per_aut(s, coprime_decomposition)
}

pub(super) fn run_jordan_bound(s: &Subjects<'_>) -> Rows {
    if is_elementary_abelian(s.group).is_none() {
        return whole_group(Verdict::skipped("not elementary abelian"));
    }
    per_aut(s, jordan_bound)
}

fn abelian_only(s: &Subjects<'_>, f: fn(&Automorphism<'_>) -> Verdict) -> Rows {
    if !s.group.is_abelian() {
        return whole_group(Verdict::skipped("not abelian"));
    }
    per_aut(s, f)
}

pub(super) fn run_abelian_sink_a(s: &Subjects<'_>) -> Rows {
    abelian_only(s, abelian_sink_subgroup)
}

pub(super) fn run_abelian_sink_b(s: &Subjects<'_>) -> Rows {
    abelian_only(s, abelian_sink_powers)
}

pub(super) fn run_abelian_sink_c(s: &Subjects<'_>) -> Rows {
    abelian_only(s, abelian_sink_onto)
}

pub(super) fn run_abelian_order(s: &Subjects<'_>) -> Rows {
    abelian_only(s, abelian_order)
}

pub(super) fn run_metabelian(s: &Subjects<'_>) -> Rows {
    if !s.group.is_metabelian() {
        return whole_group(Verdict::skipped("not metabelian"));
    }
    per_element(s, |x| metabelian_containment(s.group, x))
}

pub(super) fn run_involution(s: &Subjects<'_>) -> Rows {
    per_aut(s, involution_case)
}

pub(super) fn run_cyclic_sylow(s: &Subjects<'_>) -> Rows {
    if !is_nonabelian_simple(s.group) {
        return whole_group(Verdict::skipped("not nonabelian simple"));
    }
    let sylows = cyclic_sylows(s.group);
    per_aut(s, |a| cyclic_sylow_bound(a, &sylows))
}

pub(super) fn run_alternating(s: &Subjects<'_>) -> Rows {
    let Some(n) = alternating_degree(s.group.name()) else {
        return whole_group(Verdict::skipped("not an alternating group of degree at least 5"));
    };
    per_aut(s, |a| alternating_bound(a, n))
}

pub(super) fn run_generation(s: &Subjects<'_>) -> Rows {
    per_aut(s, generation)
}

pub(super) fn run_baer(s: &Subjects<'_>) -> Rows {
    whole_group(baer(s.group, s.elements()))
}

pub(super) fn run_quotient(s: &Subjects<'_>) -> Rows {
    whole_group(quotient_compatibility(s.group, s.elements()))
}

pub(super) fn run_residual(s: &Subjects<'_>) -> Rows {
    whole_group(residual(s.group, s.elements()))
}

pub(super) fn run_zsigmondy() -> Rows {
    let mut rows = Vec::new();
    for q in 2..=30u128 {
        for e in 2..=12u32 {
            rows.push((format!("q={} e={}", q, e), zsigmondy_pair(q, e)));
        }
    }
    rows
}

pub(super) fn run_zsigmondy_chain() -> Rows {
    let mut rows = Vec::new();
    for p in [2u128, 3, 5, 7, 11, 13] {
        for k in 4..=8u32 {
            for e in 1..=3u32 {
                rows.push((format!("p={} k={} e={}", p, k, e), zsigmondy_chain(p, k, e)));
            }
        }
    }
    rows
}
