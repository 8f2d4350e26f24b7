use super::Automorphism;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group, Subgroup, ORDER_LIMIT};
use crate::perm::Perm;

/// `G⟨φ⟩ = G ⋊ ⟨φ⟩` computed from `G`'s table and the powers of `φ`.
///
/// Element `gφ^i` has index `g + |G|·i`, so base elements keep their indices.
/// Inside the product, `φ⁻¹ x φ = x^φ` for `x` in `G`.
pub struct Semidirect<'g> {
    base: &'g FiniteGroup,
    n: usize,
    m: usize,
    // powers[k * m + x] = x^(φ^k)
    powers: Vec<u32>,
    gens: Vec<usize>,
}

impl<'g> Semidirect<'g> {
    pub fn new(aut: &Automorphism<'g>) -> Self {
        let base = aut.group();
        let m = base.order();
        let n = aut.order();
        let mut powers = Vec::with_capacity(n * m);
        powers.extend(0..m as u32);
        for k in 1..n {
            let prev = (k - 1) * m;
            for x in 0..m {
                let y = powers[prev + x];
                powers.push(aut.table()[y as usize]);
            }
        }
        let mut gens = base.generators().to_vec();
        if n > 1 {
            gens.push(m);
        }
        Semidirect {
            base,
            n,
            m,
            powers,
            gens,
        }
    }

    pub fn base(&self) -> &'g FiniteGroup {
        self.base
    }

    pub fn aut_order(&self) -> usize {
        self.n
    }

    /// Index of `φ` itself; the identity when `φ` is trivial.
    pub fn phi(&self) -> usize {
        if self.n > 1 {
            self.m
        } else {
            0
        }
    }

    /// Index of `gφ^i`.
    #[inline]
    pub fn pair(&self, g: usize, i: usize) -> usize {
        g + self.m * (i % self.n)
    }

    /// `(g, i)` with `x = gφ^i`.
    #[inline]
    pub fn split(&self, x: usize) -> (usize, usize) {
        (x % self.m, x / self.m)
    }

    #[inline]
    fn power_apply(&self, k: usize, x: usize) -> usize {
        self.powers[k * self.m + x] as usize
    }

    pub fn base_subgroup(&self) -> Subgroup<'_, Self> {
        Subgroup::from_members(self, (0..self.m).collect())
    }

    /// `K⟨φ⟩` for a φ-invariant subgroup `K` of the base.
    pub fn with_phi(&self, k: &Subgroup<'_, FiniteGroup>) -> Subgroup<'_, Self> {
        let mut members = Vec::with_capacity(k.order() * self.n);
        for i in 0..self.n {
            for &x in k.members() {
                members.push(self.pair(x, i));
            }
        }
        Subgroup::from_members(self, members)
    }

    /// Lifts a base subgroup to a subgroup of the product.
    pub fn lift(&self, k: &Subgroup<'_, FiniteGroup>) -> Subgroup<'_, Self> {
        Subgroup::from_members(self, k.members().to_vec())
    }
}

impl Group for Semidirect<'_> {
    fn order(&self) -> usize {
        self.m * self.n
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        let (g, i) = self.split(a);
        let (h, j) = self.split(b);
        let back = (self.n - i) % self.n;
        let twisted = self.power_apply(back, h);
        self.pair(self.base.mul(g, twisted), i + j)
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        let (g, i) = self.split(a);
        let gi = self.power_apply(i, self.base.inv(g));
        self.pair(gi, (self.n - i) % self.n)
    }

    fn generators(&self) -> &[usize] {
        &self.gens
    }

    fn label(&self, a: usize) -> String {
        let (g, i) = self.split(a);
        match (g, i) {
            (_, 0) => self.base.label(g),
            (0, 1) => "phi".to_string(),
            (0, _) => format!("phi^{}", i),
            (_, 1) => format!("{}*phi", self.base.label(g)),
            _ => format!("{}*phi^{}", self.base.label(g), i),
        }
    }
}

/// `G⟨φ⟩` as a permutation group on the elements of `G`: `g` acts by right
/// multiplication and `φ` by its own action, a faithful representation.
pub struct ExtensionGroup<'g> {
    aut: Automorphism<'g>,
    carrier: FiniteGroup,
    embed: Vec<u32>,
    phi_powers: Vec<usize>,
    split: Vec<(u32, u32)>,
}

impl<'g> ExtensionGroup<'g> {
    pub fn new(aut: Automorphism<'g>) -> Result<Self> {
        let base = aut.group();
        let m = base.order();
        let n = aut.order();
        if m * n > ORDER_LIMIT {
            return Err(Error::TooLarge { limit: ORDER_LIMIT });
        }
        let right = |g: usize| {
            Perm::from_images((0..m).map(|x| base.mul(x, g)).collect()).expect("right regular action")
        };
        let phi_perm = Perm::from_images((0..m).map(|x| aut.apply(x)).collect()).expect("automorphism");
        let mut gens: Vec<Perm> = base.generators().iter().map(|&s| right(s)).collect();
        gens.push(phi_perm.clone());
        let carrier = FiniteGroup::generate(m.max(1), gens)?;
        assert_eq!(carrier.order(), m * n, "holomorph action is faithful");
        let embed: Vec<u32> = (0..m)
            .map(|g| carrier.index_of(&right(g)).expect("base element in carrier") as u32)
            .collect();
        let phi = carrier.index_of(&phi_perm).expect("phi in carrier");
        let mut phi_powers = vec![0usize];
        for _ in 1..n {
            phi_powers.push(carrier.mul(*phi_powers.last().unwrap(), phi));
        }
        let mut split = vec![(u32::MAX, u32::MAX); m * n];
        for g in 0..m {
            for (i, &p) in phi_powers.iter().enumerate() {
                split[carrier.mul(embed[g] as usize, p)] = (g as u32, i as u32);
            }
        }
        Ok(ExtensionGroup {
            aut,
            carrier,
            embed,
            phi_powers,
            split,
        })
    }

    pub fn carrier(&self) -> &FiniteGroup {
        &self.carrier
    }

    pub fn into_carrier(self) -> FiniteGroup {
        self.carrier
    }

    pub fn base(&self) -> &'g FiniteGroup {
        self.aut.group()
    }

    pub fn aut(&self) -> &Automorphism<'g> {
        &self.aut
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    /// Carrier index of base element `g`.
    pub fn embed(&self, g: usize) -> usize {
        self.embed[g] as usize
    }

    /// Carrier index of `φ^i`.
    pub fn phi_power(&self, i: usize) -> usize {
        self.phi_powers[i % self.phi_powers.len()]
    }

    pub fn phi(&self) -> usize {
        self.phi_power(1)
    }

    /// Carrier index of `gφ^i`.
    pub fn pair(&self, g: usize, i: usize) -> usize {
        self.carrier.mul(self.embed(g), self.phi_power(i))
    }

    /// `(g, i)` with carrier element `x = gφ^i`.
    pub fn split(&self, x: usize) -> (usize, usize) {
        let (g, i) = self.split[x];
        (g as usize, i as usize)
    }

    pub fn base_subgroup(&self) -> Subgroup<'_, FiniteGroup> {
        Subgroup::from_members(&self.carrier, self.embed.iter().map(|&e| e as usize).collect())
    }
}
