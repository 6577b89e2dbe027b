//! Cusp combinatorics for Gamma_1(N) and Gamma_0(N).
//!
//! Conventions follow the braces notation: for a divisor D of N, `{n}_D` is
//! the representative of +-n modulo N/D inside [0, N/(2D)], and `mu_D(n)` is
//! the sign that realizes it (taken +1 on the boundary). The order of a
//! modular unit W_a at a cusp, the lower bound for the order of a trace, the
//! Gamma_0(N) cusp classes with their widths and B(u,D) matrices, and the
//! genus of X_0(N) all reduce to this arithmetic.

use serde::Serialize;

use crate::exact::{divisors, euler_phi, gcd_u32, modn};
use crate::{Error, Result};

/// A vector [a1,a2,a3,a4] of residues mod N defining the modular unit
/// W_a = (p(a1/N) - p(a2/N)) / (p(a3/N) - p(a4/N)).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WVector {
    pub n: u32,
    pub a: [i64; 4],
}

impl WVector {
    pub fn new(n: u32, a: [i64; 4]) -> Result<Self> {
        let bad = || Error::InvalidVector(a[0], a[1], a[2], a[3], n);
        let ni = n as i64;
        for ai in a {
            if ai.rem_euclid(ni) == 0 {
                return Err(bad());
            }
        }
        if (a[0] - a[1]).rem_euclid(ni) == 0 || (a[0] + a[1]).rem_euclid(ni) == 0 {
            return Err(bad());
        }
        if (a[2] - a[3]).rem_euclid(ni) == 0 || (a[2] + a[3]).rem_euclid(ni) == 0 {
            return Err(bad());
        }
        Ok(WVector { n, a })
    }

    /// Scalar action lambda * a (lambda a unit mod N keeps the vector valid).
    pub fn scaled(&self, lambda: i64) -> WVector {
        let ni = self.n as i64;
        WVector {
            n: self.n,
            a: [
                (self.a[0] * lambda).rem_euclid(ni),
                (self.a[1] * lambda).rem_euclid(ni),
                (self.a[2] * lambda).rem_euclid(ni),
                (self.a[3] * lambda).rem_euclid(ni),
            ],
        }
    }

    /// W_a is the constant 1 exactly when the numerator and denominator
    /// p-differences coincide, i.e. {+-a1,+-a2} = {+-a3,+-a4} as multisets
    /// in the same pairing. Constant -1 (swapped pairing) is also flagged.
    pub fn is_constant(&self) -> bool {
        let n = self.n;
        let fold = |x: i64| {
            let r = modn(x, n);
            r.min(n - r)
        };
        let (p, q) = (fold(self.a[0]), fold(self.a[1]));
        let (r, s) = (fold(self.a[2]), fold(self.a[3]));
        (p == r && q == s) || (p == s && q == r)
    }
}

/// ({n}_D, mu_D(n)): 0 <= {n}_D <= N/(2D), n == mu * {n}_D mod N/D,
/// mu = +1 when {n}_D is 0 or N/(2D).
pub fn braces_mu(n_val: i64, d: u32, n: u32) -> (u32, i64) {
    debug_assert!(n % d == 0, "D={d} must divide N={n}");
    let m = (n / d) as i64;
    let r = n_val.rem_euclid(m);
    if 2 * r <= m {
        (r as u32, 1)
    } else {
        ((m - r) as u32, -1)
    }
}

/// A cusp (u:t) of Gamma_1(N) from the standard inequivalent list.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gamma1Cusp {
    pub u: i64,
    pub t: i64,
    /// D = gcd(t, N).
    pub d: u32,
}

/// All inequivalent cusps of Gamma_1(N), ordered by (t, u):
/// (u:t) for 1 <= t < N/2 with 1 <= u <= D, gcd(u,D) = 1, and
/// (u:t) for t in {N/2, N} with 1 <= u <= floor(D/2), gcd(u,D) = 1,
/// where D = gcd(t,N). The floor on D/2 is validated against the classical
/// cusp count (1/2) sum_{d|N} phi(d) phi(N/d).
pub fn cusps_gamma1(n: u32) -> Result<Vec<Gamma1Cusp>> {
    if n < 5 {
        return Err(Error::UnsupportedLevel(n));
    }
    let ni = n as i64;
    let mut out = Vec::new();
    let mut ts: Vec<i64> = (1..ni).filter(|t| 2 * t < ni).collect();
    if ni % 2 == 0 {
        ts.push(ni / 2);
    }
    ts.push(ni);
    for t in ts {
        let d = gcd_u32(t as u32, n);
        let u_max = if 2 * t < ni { d as i64 } else { (d as i64) / 2 };
        for u in 1..=u_max {
            if num_integer::gcd(u, d as i64) == 1 {
                out.push(Gamma1Cusp { u, t, d });
            }
        }
    }
    Ok(out)
}

/// Classical Gamma_1(N) cusp count for N > 4, used as a cross-check.
pub fn gamma1_cusp_count(n: u32) -> u32 {
    let total: u32 = divisors(n)
        .iter()
        .map(|&d| euler_phi(d) * euler_phi(n / d))
        .sum();
    total / 2
}

/// A Gamma_0(N) cusp class <u/D> with its divisor data.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct CuspClass {
    pub u: i64,
    pub d: u32,
    /// gcd(D, N/D); the local parameter at <u/D> is q_D^width.
    pub width: u32,
    /// Lower-right entry of B(u,D) = [[u, c], [D, d]] with u*dd - c*D = 1,
    /// chosen as the smallest non-negative solution of u*dd == 1 mod D.
    pub dd: i64,
}

impl CuspClass {
    pub fn is_p(&self) -> bool {
        self.d == 1
    }

    pub fn label(&self) -> String {
        format!("<{}/{}>", self.u, self.d)
    }
}

fn smallest_inverse_mod(u: i64, d: u32) -> i64 {
    if d == 1 {
        return 0;
    }
    let di = d as i64;
    (0..di)
        .find(|dd| (u * dd).rem_euclid(di) == 1)
        .expect("u invertible mod D")
}

fn make_class(n: u32, u: i64, d: u32) -> CuspClass {
    CuspClass {
        u,
        d,
        width: gcd_u32(d, n / d),
        dd: smallest_inverse_mod(u, d),
    }
}

/// One representative <v/D> per Gamma_0(N) cusp class: for each divisor D of
/// N, v runs over residues mod gcd(D, N/D) coprime to D (lifted minimally).
/// <1/1> comes first; ordering is by (D, u).
pub fn cusps_gamma0(n: u32) -> Result<Vec<CuspClass>> {
    if n < 5 {
        return Err(Error::UnsupportedLevel(n));
    }
    let mut out = Vec::new();
    for d in divisors(n) {
        let w = gcd_u32(d, n / d);
        for r in 1..=w as i64 {
            if num_integer::gcd(r, w as i64) != 1 {
                continue;
            }
            // Lift r mod w to the smallest positive v with gcd(v, D) = 1.
            let mut v = r;
            while num_integer::gcd(v, d as i64) != 1 {
                v += w as i64;
            }
            out.push(make_class(n, v, d));
        }
    }
    out.sort_by_key(|c| (c.d, c.u));
    Ok(out)
}

/// Map a Gamma_1(N) cusp (u:t) to its Gamma_0(N) class representative:
/// D = gcd(t,N) and v == u * t/D mod gcd(D, N/D).
pub fn cusp_class_of(u: i64, t: i64, n: u32) -> Result<CuspClass> {
    if n < 5 {
        return Err(Error::UnsupportedLevel(n));
    }
    let ni = n as i64;
    if t < 1 || t > ni || u < 1 {
        return Err(Error::InvalidCusp { u, t, n });
    }
    let d = gcd_u32(t as u32, n);
    if num_integer::gcd(u, d as i64) != 1 {
        return Err(Error::InvalidCusp { u, t, n });
    }
    let w = gcd_u32(d, n / d) as i64;
    let target = (u * (t / d as i64)).rem_euclid(w.max(1));
    for c in cusps_gamma0(n)? {
        if c.d == d && c.u.rem_euclid(w.max(1)) == target {
            return Ok(c);
        }
    }
    Err(Error::InvalidCusp { u, t, n })
}

/// Order of W_a at the Gamma_1(N) cusp Q = (u:t), in q_D units where
/// D = gcd(t,N): min({a1 t'}_D, {a2 t'}_D) - min({a3 t'}_D, {a4 t'}_D)
/// with t' = t/D. Independent of u.
pub fn w_order(a: &WVector, t: i64) -> i64 {
    let n = a.n;
    let r = t.rem_euclid(n as i64);
    let d = if r == 0 { n } else { gcd_u32(r as u32, n) };
    let tp = t / d as i64;
    let b = |x: i64| braces_mu(x * tp, d, n).0 as i64;
    b(a.a[0]).min(b(a.a[1])) - b(a.a[2]).min(b(a.a[3]))
}

/// Candidate scalars s for the trace order bound at divisor D:
/// 1 <= s <= N/(2D), gcd(s, N/D) = 1 (at D = N the set degenerates to {1}).
fn trace_scalars(n: u32, d: u32) -> Vec<i64> {
    let m = (n / d) as i64;
    let hi = ((n as i64) / (2 * d as i64)).max(1);
    (1..=hi)
        .filter(|s| num_integer::gcd(*s, m) == 1)
        .collect()
}

/// Lower bound for the order of T(W_a W_b) at the class <1/D>, in q_D units:
/// min over s of (o_Q(s a) + o_Q(s b)) with Q = (1:D).
pub fn trace_order_bound(a: &WVector, b: Option<&WVector>, d: u32) -> i64 {
    let n = a.n;
    trace_scalars(n, d)
        .into_iter()
        .map(|s| {
            let oa = w_order(&a.scaled(s), d as i64);
            let ob = match b {
                Some(b) => w_order(&b.scaled(s), d as i64),
                None => 0,
            };
            oa + ob
        })
        .min()
        .expect("scalar set is nonempty")
}

/// Genus of X_0(N) by the index / elliptic-point / cusp-count formula.
pub fn genus0(n: u32) -> u32 {
    assert!(n >= 1);
    // Index of Gamma_0(N) in SL_2(Z).
    let mut mu = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            mu = mu / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        mu = mu / m * (m + 1);
    }
    let nu2 = if n % 4 == 0 {
        0
    } else {
        prime_factors(n)
            .iter()
            .map(|&p| match p % 4 {
                1 => 2,
                2 => 1,
                _ => 0,
            })
            .product::<u32>()
    };
    let nu3 = if n % 9 == 0 {
        0
    } else {
        prime_factors(n)
            .iter()
            .map(|&p| match p % 3 {
                1 => 2,
                0 => 1,
                _ => 0,
            })
            .product::<u32>()
    };
    let nu_inf: u32 = divisors(n)
        .iter()
        .map(|&d| euler_phi(gcd_u32(d, n / d)))
        .sum();
    // g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2, always a non-negative integer.
    let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * nu_inf;
    debug_assert_eq!(twelve_g % 12, 0, "genus formula must be integral");
    twelve_g / 12
}

fn prime_factors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Units mod N folded by +-1: representatives 1 <= lambda <= N/2 with
/// gcd(lambda, N) = 1. This indexes the trace sum.
pub fn lambda_orbit(n: u32) -> Vec<i64> {
    (1..=(n as i64) / 2)
        .filter(|l| num_integer::gcd(*l, n as i64) == 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braces_examples() {
        assert_eq!(braces_mu(9, 1, 14), (5, -1));
        assert_eq!(braces_mu(7, 1, 14), (7, 1)); // boundary N/2 forces mu=+1
        assert_eq!(braces_mu(3, 2, 14), (3, 1));
        assert_eq!(braces_mu(0, 2, 14), (0, 1));
    }

    #[test]
    fn braces_scaling_identity() {
        // {nD} = {n}_D * D and mu(nD) = mu_D(n).
        for n_val in -30i64..30 {
            for d in divisors(20) {
                let (b, m) = braces_mu(n_val, d, 20);
                let (bs, ms) = braces_mu(n_val * d as i64, 1, 20);
                assert_eq!(bs, b * d);
                assert_eq!(ms, m);
            }
        }
    }

    #[test]
    fn gamma1_cusps_n6() {
        let cusps = cusps_gamma1(6).unwrap();
        // t in {1,2} (t < 3), plus t in {3, 6}
        let ts: Vec<i64> = cusps.iter().map(|c| c.t).collect();
        assert_eq!(ts, vec![1, 2, 3, 6]);
        assert_eq!(cusps.len() as u32, gamma1_cusp_count(6));
    }

    #[test]
    fn gamma1_count_matches_formula() {
        for n in 5..=60 {
            let cusps = cusps_gamma1(n).unwrap();
            assert_eq!(
                cusps.len() as u32,
                gamma1_cusp_count(n),
                "cusp count mismatch at N={n}"
            );
            for c in &cusps {
                assert_eq!(num_integer::gcd(c.u, c.d as i64), 1);
            }
        }
    }

    #[test]
    fn low_levels_rejected() {
        assert!(cusps_gamma1(4).is_err());
        assert!(cusps_gamma0(3).is_err());
    }

    #[test]
    fn gamma0_cusps_n14() {
        let cs = cusps_gamma0(14).unwrap();
        let labels: Vec<String> = cs.iter().map(|c| c.label()).collect();
        assert_eq!(labels, vec!["<1/1>", "<1/2>", "<1/7>", "<1/14>"]);
        assert!(cs[0].is_p());
        // d entries: <1/1> has dd=0 (B = [[1,-1],[1,0]]), others dd=1.
        assert_eq!(cs[0].dd, 0);
        assert_eq!(cs[1].dd, 1);
    }

    #[test]
    fn gamma0_counts() {
        let count = |n: u32| cusps_gamma0(n).unwrap().len();
        assert_eq!(count(6), 4);
        assert_eq!(count(25), 6); // D=5 contributes phi(5)=4 classes
        assert_eq!(count(52), 6);
    }

    #[test]
    fn class_of_examples() {
        assert_eq!(cusp_class_of(1, 1, 14).unwrap().label(), "<1/1>");
        assert_eq!(cusp_class_of(3, 7, 14).unwrap().label(), "<1/7>");
        // N=25, t=5: classes distinguished by u*t/D mod 5
        let a = cusp_class_of(1, 5, 25).unwrap();
        let b = cusp_class_of(6, 5, 25).unwrap();
        assert_eq!(a, b, "u=1 and u=6 agree mod 5");
        let c = cusp_class_of(2, 5, 25).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn orbit_partition_covers() {
        for n in [14u32, 20, 25, 36] {
            let classes = cusps_gamma0(n).unwrap();
            let mut sizes = vec![0usize; classes.len()];
            for c in cusps_gamma1(n).unwrap() {
                let cls = cusp_class_of(c.u, c.t, n).unwrap();
                let idx = classes.iter().position(|x| *x == cls).unwrap();
                sizes[idx] += 1;
            }
            assert_eq!(
                sizes.iter().sum::<usize>() as u32,
                gamma1_cusp_count(n),
                "partition must cover all Gamma_1 cusps at N={n}"
            );
            assert!(sizes.iter().all(|&s| s > 0), "empty class at N={n}");
        }
    }

    #[test]
    fn w_order_examples() {
        let a = WVector::new(14, [5, 1, 2, 1]).unwrap();
        assert_eq!(w_order(&a, 1), 0);
        let b = WVector::new(11, [10, 5, 3, 5]).unwrap();
        assert_eq!(w_order(&b, 1), -2);
        // constant vector has order 0 everywhere
        let c = WVector::new(14, [5, 2, 5, 2]).unwrap();
        assert!(c.is_constant());
        for t in [1i64, 2, 7, 14] {
            assert_eq!(w_order(&c, t), 0);
        }
    }

    #[test]
    fn divisor_degree_zero() {
        // Sum of w_order over all Gamma_1 cusps vanishes.
        for (n, a) in [
            (14u32, [5i64, 1, 2, 1]),
            (14, [4, 1, 3, 1]),
            (11, [10, 5, 3, 5]),
            (20, [9, 1, 2, 1]),
        ] {
            let v = WVector::new(n, a).unwrap();
            let total: i64 = cusps_gamma1(n)
                .unwrap()
                .iter()
                .map(|c| w_order(&v, c.t))
                .sum();
            assert_eq!(total, 0, "deg div W_a != 0 for {a:?} at N={n}");
        }
    }

    #[test]
    fn trace_bound_examples() {
        let a = WVector::new(14, [5, 1, 2, 1]).unwrap();
        assert_eq!(trace_order_bound(&a, None, 1), -2);
        let b = WVector::new(11, [2, 1, 5, 1]).unwrap();
        assert_eq!(trace_order_bound(&b, None, 1), -2);
        // Width-1 check: all orders >= 0 implies bound >= 0.
        assert!(trace_order_bound(&a, None, 14) >= 0);
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus0(6), 0);
        assert_eq!(genus0(7), 0);
        assert_eq!(genus0(11), 1);
        assert_eq!(genus0(14), 1);
        assert_eq!(genus0(22), 2);
        assert_eq!(genus0(30), 3);
        assert_eq!(genus0(38), 4);
        assert_eq!(genus0(52), 5);
    }

    #[test]
    fn lambda_orbit_sizes() {
        assert_eq!(lambda_orbit(14), vec![1, 3, 5]);
        assert_eq!(lambda_orbit(52).len(), 12);
    }
}
