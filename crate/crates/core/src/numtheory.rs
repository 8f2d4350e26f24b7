//! Primes, multiplicative orders, Bertrand primes and Zsigmondy primes over `u128`.

use serde::Serialize;

use crate::error::{Error, Result};

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`; `0` when `m = 1`. Requires `gcd(a, m) = 1`.
pub fn mod_inverse(a: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(m as i128) as u128
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let (mut a, mut b, mut acc) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the witness set is exact below 3.3·10²⁴ and
/// probabilistic beyond, which covers every input this crate produces.
pub fn is_prime(n: u128) -> bool {
    const WITNESSES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_upto(n: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// `(p^a, n / p^a)` with `p^a` the largest power of `p` dividing `n`.
pub fn p_part(n: u128, p: u128) -> (u128, u128) {
    let (mut pa, mut rest) = (1u128, n);
    if p < 2 || n == 0 {
        return (1, n);
    }
    while rest % p == 0 {
        rest /= p;
        pa *= p;
    }
    (pa, rest)
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factorize(n: u128) -> Vec<(u128, u32)> {
    let mut primes = Vec::new();
    let mut n = n;
    for p in [2u128, 3, 5] {
        while n > 1 && n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    // Wheel trial division up to a modest bound, then Pollard–Brent.
    let mut d = 7u128;
    let steps = [4u128, 2, 4, 2, 4, 6, 2, 6];
    let mut k = 0;
    while d <= 10_000 && d * d <= n {
        while n.is_multiple_of(d) {
            primes.push(d);
            n /= d;
        }
        d += steps[k];
        k = (k + 1) % steps.len();
    }
    split_large(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split_large(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

fn pollard_brent(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u128.. {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

/// Least `e ≥ 1` with `q^e ≡ 1 (mod r)`.
pub fn multiplicative_order(q: u128, r: u128) -> Result<u128> {
    if r < 2 {
        return Err(Error::Unsupported(format!("modulus {} below 2", r)));
    }
    if gcd(q, r) != 1 {
        return Err(Error::NotCoprime { a: q, b: r });
    }
    let mut totient = 1u128;
    for (p, e) in factorize(r) {
        totient *= (p - 1) * p.pow(e - 1);
    }
    let mut order = totient;
    for (p, _) in factorize(totient) {
        while order.is_multiple_of(p) && pow_mod(q, order / p, r) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// The largest prime in `(n/2, n]`.
pub fn bertrand_prime(n: u128) -> Result<u128> {
    if n < 2 {
        return Err(Error::Unsupported(format!("no prime in ({}/2, {}]", n, n)));
    }
    let mut p = n;
    while !is_prime(p) {
        p -= 1;
    }
    debug_assert!(2 * p > n);
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZsigmondyException {
    Q2e6,
    MersenneE2,
}

impl ZsigmondyException {
    pub fn describe(&self) -> &'static str {
        match self {
            ZsigmondyException::Q2e6 => "q=2, e=6",
            ZsigmondyException::MersenneE2 => "e=2 and q+1 a power of 2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZsigmondyResult {
    pub q: u128,
    pub e: u32,
    pub primes: Vec<u128>,
    pub exception: Option<ZsigmondyException>,
}

/// All primes dividing `q^e − 1` and no `q^f − 1` with `1 ≤ f < e`.
pub fn zsigmondy(q: u128, e: u32) -> Result<ZsigmondyResult> {
    if q < 2 || e < 1 {
        return Err(Error::Unsupported(format!("zsigmondy needs q >= 2 and e >= 1, got ({}, {})", q, e)));
    }
    let power = |f: u32| {
        q.checked_pow(f)
            .ok_or_else(|| Error::Overflow(format!("{}^{} exceeds 128 bits", q, f)))
    };
    // A prime dividing q^e − 1 and q^f − 1 also divides q^gcd(e,f) − 1, so
    // stripping the proper divisors f of e leaves exactly the primes of order e.
    let mut primitive = power(e)? - 1;
    for f in 1..e {
        if !e.is_multiple_of(f) {
            continue;
        }
        let lower = power(f)? - 1;
        loop {
            let d = gcd(primitive, lower);
            if d == 1 {
                break;
            }
            primitive /= d;
        }
    }
    let primes: Vec<u128> = factorize(primitive).into_iter().map(|(p, _)| p).collect();
    let exception = if q == 2 && e == 6 {
        Some(ZsigmondyException::Q2e6)
    } else if e == 2 && (q + 1).is_power_of_two() {
        Some(ZsigmondyException::MersenneE2)
    } else {
        None
    };
    Ok(ZsigmondyResult { q, e, primes, exception })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZsigmondyBoundReport {
    pub p: u128,
    pub k: u32,
    pub e: u32,
    pub m: u128,
    /// Least Zsigmondy prime for `(p, ke)`, if one exists.
    pub r: Option<u128>,
    pub exception: Option<ZsigmondyException>,
    /// `ke ≤ r − 1`.
    pub ke_below_r: Option<bool>,
    /// `r ≤ (m − 1)²`.
    pub r_within_m: Option<bool>,
    /// `max{4, (m − 1)² − 1}`.
    pub k_bound: u128,
    /// `k ≤ k_bound`.
    pub k_within_bound: bool,
}

/// Recomputes the Zsigmondy chain for `(p, ke)` and evaluates each inequality.
pub fn zsigmondy_bound_check(p: u128, k: u32, e: u32, m: u128) -> Result<ZsigmondyBoundReport> {
    let ke = k
        .checked_mul(e)
        .ok_or_else(|| Error::Overflow(format!("{} * {}", k, e)))?;
    let z = zsigmondy(p, ke)?;
    let r = z.primes.first().copied();
    let sq = m.saturating_sub(1).pow(2);
    let k_bound = sq.saturating_sub(1).max(4);
    Ok(ZsigmondyBoundReport {
        p,
        k,
        e,
        m,
        r,
        exception: z.exception,
        ke_below_r: r.map(|r| (ke as u128) < r),
        r_within_m: r.map(|r| r <= sq),
        k_bound,
        k_within_bound: k as u128 <= k_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_is_prime(n: u128) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    // Every prime up to q^e − 1 tested directly against each q^f − 1.
    fn naive_zsigmondy(q: u128, e: u32) -> Vec<u128> {
        let n = q.pow(e) - 1;
        let mut out = Vec::new();
        let mut rest = n;
        let mut d = 2;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                out.push(d);
                while rest.is_multiple_of(d) {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            out.push(rest);
        }
        out.retain(|&r| (1..e).all(|f| (q.pow(f) - 1) % r != 0));
        out
    }

    #[test]
    fn zsigmondy_examples() {
        let z = zsigmondy(2, 6).unwrap();
        assert!(z.primes.is_empty());
        assert_eq!(z.exception, Some(ZsigmondyException::Q2e6));
        let z = zsigmondy(3, 2).unwrap();
        assert!(z.primes.is_empty());
        assert_eq!(z.exception, Some(ZsigmondyException::MersenneE2));
        assert_eq!(zsigmondy(2, 4).unwrap().primes, vec![5]);
        assert_eq!(zsigmondy(3, 6).unwrap().primes, vec![7]);
        assert_eq!(zsigmondy(2, 1).unwrap().primes, Vec::<u128>::new());
        assert_eq!(zsigmondy(10, 1).unwrap().primes, vec![3]);
        assert!(matches!(zsigmondy(2, 200), Err(Error::Overflow(_))));
        assert!(zsigmondy(1, 3).is_err());
    }

    #[test]
    fn zsigmondy_matches_naive_oracle() {
        for q in 2..=12u128 {
            for e in 1..=10u32 {
                if q.pow(e) > 2_000_000_000 {
                    continue;
                }
                assert_eq!(zsigmondy(q, e).unwrap().primes, naive_zsigmondy(q, e), "({}, {})", q, e);
            }
        }
    }

    #[test]
    fn zsigmondy_exceptions_are_exactly_the_empty_cases() {
        for q in 2..=30u128 {
            for e in 2..=12u32 {
                let z = zsigmondy(q, e).unwrap();
                let expected_empty = (q == 2 && e == 6) || (e == 2 && (q + 1).is_power_of_two());
                assert_eq!(z.primes.is_empty(), expected_empty, "({}, {})", q, e);
                assert_eq!(z.exception.is_some(), expected_empty);
                for &r in &z.primes {
                    assert_eq!(multiplicative_order(q, r).unwrap(), e as u128);
                    assert!((e as u128) < r);
                }
            }
        }
    }

    #[test]
    fn multiplicative_order_examples() {
        assert_eq!(multiplicative_order(8, 7).unwrap(), 1);
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(5, 7).unwrap(), 6);
        assert_eq!(multiplicative_order(3, 10).unwrap(), 4);
        assert_eq!(multiplicative_order(6, 9), Err(Error::NotCoprime { a: 6, b: 9 }));
    }

    #[test]
    fn bertrand_examples() {
        assert_eq!(bertrand_prime(2).unwrap(), 2);
        assert_eq!(bertrand_prime(10).unwrap(), 7);
        assert_eq!(bertrand_prime(30).unwrap(), 29);
        assert!(bertrand_prime(1).is_err());
    }

    #[test]
    fn bertrand_sweep() {
        let primes = primes_upto(1_000_000);
        let mut idx = 0;
        for n in 2..=1_000_000usize {
            while idx + 1 < primes.len() && primes[idx + 1] <= n {
                idx += 1;
            }
            let p = bertrand_prime(n as u128).unwrap() as usize;
            assert_eq!(p, primes[idx]);
            assert!(2 * p > n && p <= n, "{}", n);
        }
    }

    #[test]
    fn plumbing_examples() {
        assert_eq!(p_part(12, 2), (4, 3));
        assert_eq!(p_part(7, 2), (1, 7));
        assert!(!is_prime(91));
        assert!(is_prime(2) && is_prime(97) && !is_prime(1) && !is_prime(0));
        assert_eq!(primes_upto(10), vec![2, 3, 5, 7]);
        assert_eq!(mod_inverse(3, 7), 5);
        assert_eq!(mod_inverse(5, 1), 0);
        assert_eq!(factorize(728), vec![(2, 3), (7, 1), (13, 1)]);
        let big = 1_000_000_007u128 * 998_244_353;
        assert_eq!(factorize(big), vec![(998_244_353, 1), (1_000_000_007, 1)]);
        assert!(is_prime((1u128 << 89) - 1));
        assert!(!is_prime(((1u128 << 61) - 1) * ((1u128 << 31) - 1)));
    }

    #[test]
    fn bound_check_examples() {
        let r = zsigmondy_bound_check(2, 1, 4, 3).unwrap();
        assert_eq!(r.r, Some(5));
        assert_eq!(r.ke_below_r, Some(true));
        let r = zsigmondy_bound_check(2, 3, 2, 3).unwrap();
        assert_eq!(r.r, None);
        assert_eq!(r.exception, Some(ZsigmondyException::Q2e6));
        assert_eq!(r.ke_below_r, None);
        let r = zsigmondy_bound_check(3, 2, 3, 4).unwrap();
        assert_eq!(r.r, Some(7));
        assert_eq!(r.ke_below_r, Some(true));
        assert_eq!(r.k_bound, 8);
        assert_eq!(r.r_within_m, Some(true));
    }

    proptest! {
        #[test]
        fn primality_matches_trial_division(n in 0u128..200_000) {
            prop_assert_eq!(is_prime(n), naive_is_prime(n));
        }

        #[test]
        fn factorization_multiplies_back(n in 1u128..(1u128 << 62)) {
            let f = factorize(n);
            let product: u128 = f.iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(product, n);
            prop_assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }

        #[test]
        fn order_divides_and_is_minimal(q in 2u128..500, r in 2u128..500) {
            prop_assume!(gcd(q, r) == 1);
            let e = multiplicative_order(q, r).unwrap();
            prop_assert_eq!(pow_mod(q, e, r), 1);
            for f in 1..e {
                prop_assert_ne!(pow_mod(q, f, r), 1);
            }
        }
    }
}
