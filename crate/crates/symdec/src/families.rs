//! Eulerian, colored Eulerian, derangement, and signed-descent polynomial
//! families, each with an independent brute-force enumeration oracle.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::operators::h_from_i;
use crate::poly::{binomial, xm1_basis_elem, Poly, Rat};

/// A permutation of {1..n} together with a color in 0..r at each position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPermutation {
    pub perm: Vec<usize>,
    pub colors: Vec<u8>,
}

impl ColoredPermutation {
    /// Positions k with pi(k) > k, or pi(k) = k with a nonzero color.
    pub fn excedance_count(&self) -> usize {
        self.perm
            .iter()
            .zip(&self.colors)
            .enumerate()
            .filter(|&(i, (&p, &c))| p > i + 1 || (p == i + 1 && c > 0))
            .count()
    }

    pub fn fixed_points_zero_color(&self) -> usize {
        self.perm
            .iter()
            .zip(&self.colors)
            .enumerate()
            .filter(|&(i, (&p, &c))| p == i + 1 && c == 0)
            .count()
    }
}

/// A signed permutation: pi a permutation of {1..d}, eps the signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    /// Descents of the signed word 0 < eps_1 pi_1, ..., counting positions
    /// 0..d-1 where the signed value decreases (position 0 compares with 0).
    pub fn descent_count(&self) -> usize {
        let vals: Vec<i64> = std::iter::once(0)
            .chain(
                self.perm
                    .iter()
                    .zip(&self.signs)
                    .map(|(&p, &s)| p as i64 * s as i64),
            )
            .collect();
        vals.windows(2).filter(|w| w[0] > w[1]).count()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

const BRUTE_CAP: usize = 7;

/// Eulerian polynomial A_n by excedances, via the Ehrhart-style identity
/// sum_m (m+1)^n x^m = A_n / (1-x)^(n+1).
pub fn eulerian(n: usize) -> Poly {
    colored_eulerian(n, 1).expect("r = 1 is in range")
}

/// Colored Eulerian polynomial A_{n,r} = h of i(x) = (rx+1)^n in window n.
pub fn colored_eulerian(n: usize, r: u32) -> Result<Poly> {
    if r == 0 {
        return Err(Error::OutOfRange("need r >= 1 colors".into()));
    }
    let i = xm1_basis_elem(0, n, r as i64);
    h_from_i(&i, n)
}

/// Partial colored Eulerian polynomial A^n_{r,k} = h of (rx)^k (rx+1)^(n-k).
pub fn partial_colored_eulerian(n: usize, r: u32, k: usize) -> Result<Poly> {
    if r == 0 {
        return Err(Error::OutOfRange("need r >= 1 colors".into()));
    }
    if k > n {
        return Err(Error::OutOfRange(format!("need k <= n, got k={k}, n={n}")));
    }
    let rk = Rat::from_integer(num_bigint::BigInt::from(r).pow(k as u32));
    let i = xm1_basis_elem(k, n, r as i64).scale(&rk);
    h_from_i(&i, n)
}

/// Derangement polynomial d_n = sum_k (-1)^(n-k) binom(n,k) A_k.
pub fn derangement(n: usize) -> Poly {
    let mut out = Poly::zero();
    for k in 0..=n {
        let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
        let c = Rat::from_integer(binomial(n, k) * num_bigint::BigInt::from(sign));
        out = &out + &eulerian(k).scale(&c);
    }
    out
}

/// Colored derangement polynomial
/// d_{n,r} = sum_k binom(n, n-k) (r-1)^(n-k) r^k x^(n-k) d_k.
pub fn colored_derangement(n: usize, r: u32) -> Result<Poly> {
    if r == 0 {
        return Err(Error::OutOfRange("need r >= 1 colors".into()));
    }
    let mut out = Poly::zero();
    for k in 0..=n {
        let c = Rat::from_integer(
            binomial(n, n - k)
                * num_bigint::BigInt::from(r - 1).pow((n - k) as u32)
                * num_bigint::BigInt::from(r).pow(k as u32),
        );
        if c.is_zero() {
            continue;
        }
        out = &out + &derangement(k).shift_up(n - k).scale(&c);
    }
    Ok(out)
}

/// B_k^d: descent generating polynomial of signed permutations of {1..d}
/// with eps_d = +1 and pi_d = d+1-k when k >= 1; all signed permutations
/// when k = 0. Computed through the colored Eulerian identities, which the
/// brute-force oracle cross-checks.
pub fn typeb(k: usize, d: usize) -> Result<Poly> {
    if d == 0 {
        return Err(Error::OutOfRange("need d >= 1".into()));
    }
    if k > d {
        return Err(Error::OutOfRange(format!("need k <= d, got k={k}, d={d}")));
    }
    if k == 0 {
        colored_eulerian(d, 2)
    } else {
        partial_colored_eulerian(d - 1, 2, k - 1)
    }
}

/// Oracle: count colored permutations by excedance number directly.
pub fn colored_eulerian_bruteforce(n: usize, r: u32) -> Result<Poly> {
    if n > BRUTE_CAP {
        return Err(Error::SizeCap(format!("brute force capped at n <= {BRUTE_CAP}")));
    }
    if r == 0 {
        return Err(Error::OutOfRange("need r >= 1 colors".into()));
    }
    let mut counts = vec![Rat::zero(); n + 1];
    for_each_colored(n, r, |cp| {
        counts[cp.excedance_count()] = &counts[cp.excedance_count()] + Rat::one();
    });
    Ok(Poly::new(counts))
}

/// Oracle: colored permutations with no zero-colored fixed point.
pub fn colored_derangement_bruteforce(n: usize, r: u32) -> Result<Poly> {
    if n > BRUTE_CAP {
        return Err(Error::SizeCap(format!("brute force capped at n <= {BRUTE_CAP}")));
    }
    if r == 0 {
        return Err(Error::OutOfRange("need r >= 1 colors".into()));
    }
    let mut counts = vec![Rat::zero(); n + 1];
    for_each_colored(n, r, |cp| {
        if cp.fixed_points_zero_color() == 0 {
            counts[cp.excedance_count()] = &counts[cp.excedance_count()] + Rat::one();
        }
    });
    Ok(Poly::new(counts))
}

fn for_each_colored<F: FnMut(&ColoredPermutation)>(n: usize, r: u32, mut f: F) {
    for perm in permutations(n) {
        let mut colors = vec![0u8; n];
        loop {
            f(&ColoredPermutation { perm: perm.clone(), colors: colors.clone() });
            // odometer step over colors in base r
            let mut i = 0;
            while i < n {
                if colors[i] as u32 + 1 < r {
                    colors[i] += 1;
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
}

/// Oracle: enumerate signed permutations and count descents directly.
pub fn typeb_bruteforce(k: usize, d: usize) -> Result<Poly> {
    if d > BRUTE_CAP {
        return Err(Error::SizeCap(format!("brute force capped at d <= {BRUTE_CAP}")));
    }
    if d == 0 || k > d {
        return Err(Error::OutOfRange(format!("need 1 <= d and k <= d, got k={k}, d={d}")));
    }
    let mut counts = vec![Rat::zero(); d + 1];
    for perm in permutations(d) {
        if k >= 1 && perm[d - 1] != d + 1 - k {
            continue;
        }
        let mut signs = vec![1i8; d];
        loop {
            if !(k >= 1 && signs[d - 1] < 0) {
                let sp = SignedPermutation { perm: perm.clone(), signs: signs.clone() };
                counts[sp.descent_count()] = &counts[sp.descent_count()] + Rat::one();
            }
            let mut i = 0;
            while i < d {
                if signs[i] > 0 {
                    signs[i] = -1;
                    break;
                }
                signs[i] = 1;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    Ok(Poly::new(counts))
}
