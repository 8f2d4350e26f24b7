//! Named permutation groups swept by the harness.
//!
//! Tier 1 holds groups of order at most 200, swept over every element and,
//! when enumerable, every automorphism. Tier 2 holds larger simple groups,
//! swept over inner automorphisms only.

use serde::Serialize;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::numtheory;
use crate::perm::Perm;

fn cycle_perm(points: &[usize], degree: usize) -> Perm {
    let mut images: Vec<usize> = (0..degree).collect();
    for (k, &p) in points.iter().enumerate() {
        images[p] = points[(k + 1) % points.len()];
    }
    Perm::from_images(images).expect("cycle on distinct points")
}

fn named(g: FiniteGroup, name: impl Into<String>) -> FiniteGroup {
    g.with_name(name)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Unsupported("cyclic group of order 0".into()));
    }
    let gens = if n > 1 {
        vec![cycle_perm(&(0..n).collect::<Vec<_>>(), n)]
    } else {
        Vec::new()
    };
    Ok(named(FiniteGroup::generate(n, gens)?, format!("C{}", n)))
}

/// `D_n` of order `2n`; `D_2` is the Klein four-group on 4 points.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::Unsupported(format!("dihedral group D{}", n)));
    }
    let g = if n == 2 {
        FiniteGroup::generate(
            4,
            vec![cycle_perm(&[0, 1], 4), cycle_perm(&[2, 3], 4)],
        )?
    } else {
        let rotation = cycle_perm(&(0..n).collect::<Vec<_>>(), n);
        let reflection = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        FiniteGroup::generate(n, vec![rotation, reflection])?
    };
    Ok(named(g, format!("D{}", n)))
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let mut gens = Vec::new();
    if n > 1 {
        gens.push(cycle_perm(&(0..n).collect::<Vec<_>>(), n));
        gens.push(cycle_perm(&[0, 1], n));
    }
    Ok(named(FiniteGroup::generate(n, gens)?, format!("S{}", n)))
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    // (1 2 3) with the long odd cycle (1 .. n) or (2 .. n).
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle_perm(&[0, 1, 2], n));
        if n > 3 {
            let start = if n % 2 == 1 { 0 } else { 1 };
            gens.push(cycle_perm(&(start..n).collect::<Vec<_>>(), n));
        }
    }
    Ok(named(FiniteGroup::generate(n, gens)?, format!("A{}", n)))
}

/// `C_p^k` on `pk` points.
pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    if !numtheory::is_prime(p as u128) {
        return Err(Error::NotPrime(p as u128));
    }
    if k == 0 {
        return Ok(named(FiniteGroup::generate(1, Vec::new())?, "C1"));
    }
    let degree = p * k;
    let gens = (0..k)
        .map(|i| cycle_perm(&(i * p..(i + 1) * p).collect::<Vec<_>>(), degree))
        .collect();
    Ok(named(FiniteGroup::generate(degree, gens)?, format!("C{}^{}", p, k)))
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    a.direct_product(b)
}

/// `PSL(2, p)` acting on the projective line `{0, .., p-1, ∞}`.
pub fn psl2(p: usize) -> Result<FiniteGroup> {
    if !(5..=13).contains(&p) || !numtheory::is_prime(p as u128) {
        return Err(Error::Unsupported(format!("PSL(2,{}) needs a prime 5 <= p <= 13", p)));
    }
    let inf = p;
    let translate = Perm::from_images((0..=p).map(|x| if x == inf { inf } else { (x + 1) % p }).collect()).unwrap();
    let invert = Perm::from_images(
        (0..=p)
            .map(|x| match x {
                0 => inf,
                x if x == inf => 0,
                x => {
                    let inv = numtheory::mod_inverse(x as u128, p as u128) as usize;
                    (p - inv) % p
                }
            })
            .collect(),
    )
    .unwrap();
    let g = named(FiniteGroup::generate(p + 1, vec![translate, invert])?, format!("PSL2({})", p));
    debug_assert_eq!(g.order(), p * (p * p - 1) / 2);
    Ok(g)
}

/// `G ⋊ ⟨φ⟩` as a permutation group on the elements of `G`.
pub fn semidirect(aut: &Automorphism<'_>, name: impl Into<String>) -> Result<FiniteGroup> {
    Ok(named(aut.extension()?.into_carrier(), name))
}

/// `C_n ⋊ C_k` with the generator of `C_k` acting by `x ↦ x^a`.
pub fn semidirect_cyclic(n: usize, k: usize, a: usize) -> Result<FiniteGroup> {
    let base = cyclic(n)?;
    let order = numtheory::multiplicative_order(a as u128, n as u128)?;
    if order != k as u128 {
        return Err(Error::Unsupported(format!("{} has order {} modulo {}, not {}", a, order, n, k)));
    }
    let x = base.generator_perms()[0].clone();
    let mut img = Perm::identity(n);
    for _ in 0..a {
        img = img.multiply(&x)?;
    }
    let aut = Automorphism::from_images(&base, &[img])?;
    semidirect(&aut, format!("C{}:C{}", n, k))
}

/// `C_p^d ⋊ ⟨M⟩` where `M` sends generator `e_i` to `Σ_j cols[i][j] e_j`.
fn linear_semidirect(p: usize, d: usize, cols: &[Vec<usize>], name: &str) -> Result<FiniteGroup> {
    let base = elementary_abelian(p, d)?;
    let gens = base.generator_perms().to_vec();
    let images: Vec<Perm> = cols
        .iter()
        .map(|col| {
            let mut img = Perm::identity(base.degree());
            for (j, &c) in col.iter().enumerate() {
                for _ in 0..c {
                    img = img.multiply(&gens[j]).unwrap();
                }
            }
            img
        })
        .collect();
    let aut = Automorphism::from_images(&base, &images)?;
    semidirect(&aut, name)
}

/// Right regular representation of the dicyclic group of order `4n`:
/// `a^{2n} = 1`, `b² = a^n`, `a^b = a⁻¹`.
pub fn dicyclic(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::Unsupported(format!("dicyclic group of order {}", 4 * n)));
    }
    let m = 2 * n;
    // Element a^k b^j is point k + m j.
    let mul = |(k, j): (usize, usize), (l, t): (usize, usize)| {
        let l = if j == 1 { (m - l) % m } else { l };
        let mut e = (k + l) % m;
        let mut s = j + t;
        if s == 2 {
            e = (e + n) % m;
            s = 0;
        }
        (e, s)
    };
    let point = |(k, j): (usize, usize)| k + m * j;
    let right = |g: (usize, usize)| {
        let mut images = vec![0; 2 * m];
        for j in 0..2 {
            for k in 0..m {
                images[point((k, j))] = point(mul((k, j), g));
            }
        }
        Perm::from_images(images).unwrap()
    };
    let g = FiniteGroup::generate(2 * m, vec![right((1, 0)), right((0, 1))])?;
    let name = match n {
        2 => "Q8".to_string(),
        4 => "Q16".to_string(),
        _ => format!("Dic{}", n),
    };
    Ok(named(g, name))
}

/// Linear action on the nonzero vectors of `F_3^2`, `v ↦ vM`.
fn matrix_group_f3(mats: &[[[usize; 2]; 2]], name: &str) -> Result<FiniteGroup> {
    let vectors: Vec<(usize, usize)> = (0..9).map(|i| (i / 3, i % 3)).filter(|&v| v != (0, 0)).collect();
    let pos = |v: (usize, usize)| vectors.iter().position(|&w| w == v).unwrap();
    let gens = mats
        .iter()
        .map(|m| {
            let images = vectors
                .iter()
                .map(|&(x, y)| pos(((x * m[0][0] + y * m[1][0]) % 3, (x * m[0][1] + y * m[1][1]) % 3)))
                .collect();
            Perm::from_images(images).unwrap()
        })
        .collect();
    Ok(named(FiniteGroup::generate(8, gens)?, name))
}

pub fn sl2_3() -> Result<FiniteGroup> {
    matrix_group_f3(&[[[1, 1], [0, 1]], [[1, 0], [1, 1]]], "SL(2,3)")
}

pub fn gl2_3() -> Result<FiniteGroup> {
    matrix_group_f3(&[[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 0], [0, 1]]], "GL(2,3)")
}

fn product(a: Result<FiniteGroup>, b: Result<FiniteGroup>) -> Result<FiniteGroup> {
    direct_product(&a?, &b?)
}

/// Metabelian groups used by the inverse-sink checks.
pub fn metabelian_samples() -> Result<Vec<FiniteGroup>> {
    ["S3", "D6", "C7:C3", "C5:C4", "C7:C6", "C11:C5", "C2^3:C7", "A4", "Q8", "Heis27"]
        .iter()
        .map(|n| lookup(n))
        .collect()
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub tier: u8,
    build: fn() -> Result<FiniteGroup>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<FiniteGroup> {
        Ok((self.build)()?.with_name(self.name))
    }
}

macro_rules! entry {
    ($name:expr, $tier:expr, $build:expr) => {
        CatalogEntry {
            name: $name,
            tier: $tier,
            build: $build,
        }
    };
}

static ENTRIES: &[CatalogEntry] = &[
    entry!("C1", 1, || cyclic(1)),
    entry!("C2", 1, || cyclic(2)),
    entry!("C3", 1, || cyclic(3)),
    entry!("C4", 1, || cyclic(4)),
    entry!("C5", 1, || cyclic(5)),
    entry!("C6", 1, || cyclic(6)),
    entry!("C7", 1, || cyclic(7)),
    entry!("C8", 1, || cyclic(8)),
    entry!("C9", 1, || cyclic(9)),
    entry!("C10", 1, || cyclic(10)),
    entry!("C11", 1, || cyclic(11)),
    entry!("C12", 1, || cyclic(12)),
    entry!("C15", 1, || cyclic(15)),
    entry!("C16", 1, || cyclic(16)),
    entry!("C30", 1, || cyclic(30)),
    entry!("C2^2", 1, || elementary_abelian(2, 2)),
    entry!("C2^3", 1, || elementary_abelian(2, 3)),
    entry!("C3^2", 1, || elementary_abelian(3, 2)),
    entry!("C5^2", 1, || elementary_abelian(5, 2)),
    entry!("C2xC4", 1, || product(cyclic(2), cyclic(4))),
    entry!("C4xC4", 1, || product(cyclic(4), cyclic(4))),
    entry!("C2xC6", 1, || product(cyclic(2), cyclic(6))),
    entry!("S3", 1, || symmetric(3)),
    entry!("D4", 1, || dihedral(4)),
    entry!("D5", 1, || dihedral(5)),
    entry!("D6", 1, || dihedral(6)),
    entry!("D7", 1, || dihedral(7)),
    entry!("D8", 1, || dihedral(8)),
    entry!("D10", 1, || dihedral(10)),
    entry!("D12", 1, || dihedral(12)),
    entry!("Q8", 1, || dicyclic(2)),
    entry!("Q16", 1, || dicyclic(4)),
    entry!("Dic3", 1, || dicyclic(3)),
    entry!("A4", 1, || alternating(4)),
    entry!("S4", 1, || symmetric(4)),
    entry!("SL(2,3)", 1, sl2_3),
    entry!("GL(2,3)", 1, gl2_3),
    entry!("C3xS3", 1, || product(cyclic(3), symmetric(3))),
    entry!("S3xS3", 1, || product(symmetric(3), symmetric(3))),
    entry!("C2xD4", 1, || product(cyclic(2), dihedral(4))),
    entry!("C7:C3", 1, || semidirect_cyclic(7, 3, 2)),
    entry!("C5:C4", 1, || semidirect_cyclic(5, 4, 2)),
    entry!("C7:C6", 1, || semidirect_cyclic(7, 6, 3)),
    entry!("C11:C5", 1, || semidirect_cyclic(11, 5, 3)),
    // Companion matrices of x^3 + x + 1 and x^4 + x^3 + x^2 + x + 1 over F_2.
    entry!("C2^3:C7", 1, || linear_semidirect(2, 3, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]], "C2^3:C7")),
    entry!("C2^4:C5", 1, || {
        linear_semidirect(2, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1]], "C2^4:C5")
    }),
    entry!("Heis27", 1, || linear_semidirect(3, 2, &[vec![1, 0], vec![1, 1]], "Heis27")),
    entry!("A5", 1, || alternating(5)),
    entry!("S5", 1, || symmetric(5)),
    entry!("PSL2(7)", 1, || psl2(7)),
    entry!("A6", 2, || alternating(6)),
    entry!("PSL2(11)", 2, || psl2(11)),
    entry!("PSL2(13)", 2, || psl2(13)),
    entry!("A7", 2, || alternating(7)),
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Entries of tier `t`, or of every tier when `t` is `None`.
pub fn tier(t: Option<u8>) -> impl Iterator<Item = &'static CatalogEntry> {
    ENTRIES.iter().filter(move |e| t.is_none_or(|t| e.tier == t))
}

/// Builds a catalog group by name; also accepts `D<n>`, `C<n>`, `S<n>`, `A<n>`,
/// `Q8`-style dicyclic names, `C<p>^<k>` and `PSL2(<p>)` outside the fixed list.
pub fn lookup(name: &str) -> Result<FiniteGroup> {
    if let Some(e) = ENTRIES.iter().find(|e| e.name == name) {
        return e.build();
    }
    let num = |s: &str| s.parse::<usize>().ok();
    let parsed = if let Some(rest) = name.strip_prefix("PSL2(").and_then(|r| r.strip_suffix(')')) {
        num(rest).map(psl2)
    } else if let Some((p, k)) = name.strip_prefix('C').and_then(|r| r.split_once('^')) {
        num(p).zip(num(k)).map(|(p, k)| elementary_abelian(p, k))
    } else if let Some(r) = name.strip_prefix("Dic") {
        num(r).map(dicyclic)
    } else if let Some(r) = name.strip_prefix('C') {
        num(r).map(cyclic)
    } else if let Some(r) = name.strip_prefix('D') {
        num(r).map(dihedral)
    } else if let Some(r) = name.strip_prefix('S') {
        num(r).map(symmetric)
    } else if let Some(r) = name.strip_prefix('A') {
        num(r).map(alternating)
    } else {
        None
    };
    match parsed {
        Some(g) => Ok(g?.with_name(name)),
        None => Err(Error::Parse(format!("unknown catalog group {:?}", name))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogRecord {
    pub name: String,
    pub order: usize,
    pub tier: u8,
    pub abelian: bool,
    pub nilpotent: bool,
    pub metabelian: bool,
    pub simple: bool,
}

pub fn describe(g: &FiniteGroup, tier: u8) -> CatalogRecord {
    CatalogRecord {
        name: g.name().to_string(),
        order: g.order(),
        tier,
        abelian: g.is_abelian(),
        nilpotent: g.is_nilpotent().0,
        metabelian: g.is_metabelian(),
        simple: g.is_simple(),
    }
}
