//! Exact certification of real-rootedness and of the interlacing relation
//! p ≺ q, via Sturm sequences and rational isolating intervals. No floating
//! point and no tolerances: intervals are refined by bisection until
//! disjointness is established or a shared root is proven through a gcd.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{format_rat, rat, Poly, Rat};

/// Disjoint, sorted rational intervals each containing exactly one distinct
/// real root. A point root is stored with lo == hi.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RootIsolation {
    pub intervals: Vec<RootInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub multiplicity: usize,
}

impl RootIsolation {
    pub fn total_multiplicity(&self) -> usize {
        self.intervals.iter().map(|iv| iv.multiplicity).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.intervals
                .iter()
                .map(|iv| {
                    serde_json::json!([
                        format_rat(&iv.lo),
                        format_rat(&iv.hi),
                        iv.multiplicity
                    ])
                })
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InterlaceReason {
    ZeroConvention,
    Interleaved,
    NotRealRooted,
    NotInterleaved,
    SignMismatch,
}

/// Outcome of a p ≺ q check with isolating-interval witnesses.
#[derive(Clone, Debug)]
pub struct InterlacingCertificate {
    pub holds: bool,
    pub reason: InterlaceReason,
    pub left_roots: RootIsolation,
    pub right_roots: RootIsolation,
}

impl InterlacingCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "holds": self.holds,
            "reason": format!("{:?}", self.reason),
            "p_roots": self.left_roots.to_json(),
            "q_roots": self.right_roots.to_json(),
        })
    }
}

/// Signed remainder sequence, with primitive normalization to keep the
/// integer coefficients small. Signs of the entries are preserved.
fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.primitive_part(), p.derivative().primitive_part()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        seq.push((-&r).primitive_part());
    }
}

fn sign_variations(seq: &[Poly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for q in seq {
        let v = q.evaluate(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

fn count_with_seq(seq: &[Poly], lo: &Rat, hi: &Rat) -> usize {
    sign_variations(seq, lo) - sign_variations(seq, hi)
}

/// Number of distinct real roots of p in the half-open interval (lo, hi].
pub fn sturm_count(p: &Poly, lo: &Rat, hi: &Rat) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.evaluate(lo).is_zero() || p.evaluate(hi).is_zero() {
        return Err(Error::EndpointIsRoot);
    }
    if lo >= hi {
        return Ok(0);
    }
    Ok(count_with_seq(&sturm_sequence(p), lo, hi))
}

/// Strict bound B with every real root of p inside (-B, B).
fn root_bound(p: &Poly) -> Rat {
    let lead = p.leading_coeff().abs();
    let mut max = Rat::zero();
    for c in p.coeffs() {
        let v = c.abs() / &lead;
        if v > max {
            max = v;
        }
    }
    max + rat(1)
}

/// True iff p ≡ 0 or all deg(p) zeros of p (with multiplicity) are real.
pub fn is_real_rooted(p: &Poly) -> bool {
    if p.is_zero() {
        return true;
    }
    let sf = p.squarefree_part();
    let deg = match sf.degree() {
        None | Some(0) => return true,
        Some(d) => d,
    };
    let bound = root_bound(&sf);
    let seq = sturm_sequence(&sf);
    count_with_seq(&seq, &(-bound.clone()), &bound) == deg
}

/// An isolated real algebraic number: the unique root of the squarefree
/// polynomial `f` in (lo, hi), or exactly lo when lo == hi.
#[derive(Clone, Debug)]
struct AlgRoot {
    f: Poly,
    seq: Vec<Poly>,
    lo: Rat,
    hi: Rat,
}

impl AlgRoot {
    fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn contains_rat(&self, x: &Rat) -> bool {
        if self.is_point() {
            &self.lo == x
        } else {
            &self.lo < x && x < &self.hi
        }
    }

    /// Halve the interval, preserving the invariant.
    fn refine(&mut self) {
        if self.is_point() {
            return;
        }
        let mid = (&self.lo + &self.hi) / rat(2);
        if self.f.evaluate(&mid).is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        if count_with_seq(&self.seq, &self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }
}

/// Exact comparison of two isolated algebraic numbers. Equality is proven
/// through a shared root of gcd(f1, f2); otherwise bisection separates the
/// intervals in finitely many steps.
fn cmp_roots(a: &mut AlgRoot, b: &mut AlgRoot) -> Ordering {
    let g = a.f.gcd(&b.f);
    let g_seq = if g.degree().map_or(false, |d| d >= 1) {
        Some(sturm_sequence(&g))
    } else {
        None
    };
    loop {
        match (a.is_point(), b.is_point()) {
            (true, true) => return a.lo.cmp(&b.lo),
            (true, false) => {
                if b.contains_rat(&a.lo) {
                    if b.f.evaluate(&a.lo).is_zero() {
                        return Ordering::Equal;
                    }
                    b.refine();
                } else if a.lo <= b.lo {
                    return Ordering::Less;
                } else {
                    return Ordering::Greater;
                }
            }
            (false, true) => {
                return cmp_roots(b, a).reverse();
            }
            (false, false) => {
                if a.hi <= b.lo {
                    return Ordering::Less;
                }
                if b.hi <= a.lo {
                    return Ordering::Greater;
                }
                if let Some(seq) = &g_seq {
                    let lo = if a.lo >= b.lo { a.lo.clone() } else { b.lo.clone() };
                    let hi = if a.hi <= b.hi { a.hi.clone() } else { b.hi.clone() };
                    if lo < hi && count_with_seq(seq, &lo, &hi) == 1 {
                        // The shared root lies in both isolating intervals,
                        // so it is the unique root of each.
                        return Ordering::Equal;
                    }
                }
                a.refine();
                b.refine();
            }
        }
    }
}

/// Isolating intervals for the distinct real roots of a squarefree p.
fn isolate_squarefree(sf: &Poly) -> Vec<(Rat, Rat)> {
    if sf.degree().map_or(true, |d| d == 0) {
        return Vec::new();
    }
    let seq = sturm_sequence(sf);
    let bound = root_bound(sf);
    let mut out: Vec<(Rat, Rat)> = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_with_seq(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && !sf.evaluate(&hi).is_zero() {
            // check the root is not at a point we can name exactly
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / rat(2);
        if sf.evaluate(&mid).is_zero() {
            // exact rational root at mid; carve out a punctured neighborhood
            let mut delta = (&hi - &lo) / rat(4);
            loop {
                let l = &mid - &delta;
                let r = &mid + &delta;
                if !sf.evaluate(&l).is_zero()
                    && !sf.evaluate(&r).is_zero()
                    && count_with_seq(&seq, &l, &r) == 1
                {
                    out.push((mid.clone(), mid.clone()));
                    stack.push((lo, l));
                    stack.push((r, hi));
                    break;
                }
                delta = delta / rat(2);
            }
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Multiplicity of the isolated root of sf as a root of the gcd chain
/// g_0 = p, g_{j+1} = gcd(g_j, g_j').
fn multiplicity_in(p: &Poly, lo: &Rat, hi: &Rat) -> usize {
    let mut g = p.primitive_part();
    let mut mult = 0;
    loop {
        let has_root = if lo == hi {
            g.evaluate(lo).is_zero()
        } else {
            !g.is_zero()
                && g.degree().map_or(false, |d| d >= 1)
                && count_with_seq(&sturm_sequence(&g), lo, hi) == 1
        };
        if !has_root {
            return mult;
        }
        mult += 1;
        g = g.gcd(&g.derivative());
    }
}

fn isolate_internal(p: &Poly) -> Result<(Vec<AlgRoot>, Vec<usize>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_real_rooted(p) {
        return Err(Error::NotRealRooted);
    }
    let sf = p.squarefree_part();
    let mut roots = Vec::new();
    let mut mults = Vec::new();
    for (lo, hi) in isolate_squarefree(&sf) {
        mults.push(multiplicity_in(p, &lo, &hi));
        roots.push(AlgRoot { f: sf.clone(), seq: sturm_sequence(&sf), lo, hi });
    }
    debug_assert_eq!(
        mults.iter().sum::<usize>(),
        p.degree().unwrap_or(0),
        "multiplicities must account for every root of a real-rooted polynomial"
    );
    Ok((roots, mults))
}

/// Disjoint isolating intervals with multiplicities for a real-rooted p ≠ 0.
pub fn isolate_roots(p: &Poly) -> Result<RootIsolation> {
    let (roots, mults) = isolate_internal(p)?;
    Ok(RootIsolation {
        intervals: roots
            .into_iter()
            .zip(mults)
            .map(|(r, m)| RootInterval { lo: r.lo, hi: r.hi, multiplicity: m })
            .collect(),
    })
}

fn empty_isolation() -> RootIsolation {
    RootIsolation { intervals: Vec::new() }
}

fn isolation_of(roots: &[AlgRoot], mults: &[usize]) -> RootIsolation {
    RootIsolation {
        intervals: roots
            .iter()
            .zip(mults)
            .map(|(r, &m)| RootInterval { lo: r.lo.clone(), hi: r.hi.clone(), multiplicity: m })
            .collect(),
    }
}

/// Certify p ≺ q for polynomials with nonnegative coefficients (plus the
/// zero-polynomial conventions). For positive leading coefficients the
/// Wronskian sign condition is equivalent to the ordered interleaving
///   ... <= beta_2 <= alpha_2 <= beta_1 <= alpha_1
/// of the root multisets (beta from p, alpha from q), with equalities
/// allowed, which is what is checked here.
pub fn interlaces(p: &Poly, q: &Poly) -> Result<InterlacingCertificate> {
    if p.is_zero() || q.is_zero() {
        let other = if p.is_zero() { q } else { p };
        let ok = is_real_rooted(other);
        let iso = |v: &Poly| {
            if v.is_zero() || v.degree() == Some(0) || !is_real_rooted(v) {
                empty_isolation()
            } else {
                isolate_roots(v).unwrap_or_else(|_| empty_isolation())
            }
        };
        return Ok(InterlacingCertificate {
            holds: ok,
            reason: if ok { InterlaceReason::ZeroConvention } else { InterlaceReason::NotRealRooted },
            left_roots: iso(p),
            right_roots: iso(q),
        });
    }
    if !p.has_nonneg_coeffs() || !q.has_nonneg_coeffs() {
        return Err(Error::UnsupportedSignPattern);
    }
    if !is_real_rooted(p) || !is_real_rooted(q) {
        return Ok(InterlacingCertificate {
            holds: false,
            reason: InterlaceReason::NotRealRooted,
            left_roots: empty_isolation(),
            right_roots: empty_isolation(),
        });
    }
    let dp = p.degree().unwrap();
    let dq = q.degree().unwrap();
    if dq < dp || dq > dp + 1 {
        return Err(Error::UnsupportedSignPattern);
    }
    let (mut p_roots, p_mults) = isolate_internal(p)?;
    let (mut q_roots, q_mults) = isolate_internal(q)?;
    let left = isolation_of(&p_roots, &p_mults);
    let right = isolation_of(&q_roots, &q_mults);

    // order between every distinct root of p and of q
    let mut ord = vec![vec![Ordering::Equal; q_roots.len()]; p_roots.len()];
    for i in 0..p_roots.len() {
        for j in 0..q_roots.len() {
            ord[i][j] = cmp_roots(&mut p_roots[i], &mut q_roots[j]);
        }
    }

    // expand multiplicities, descending
    let beta: Vec<usize> = p_mults
        .iter()
        .enumerate()
        .rev()
        .flat_map(|(i, &m)| std::iter::repeat(i).take(m))
        .collect();
    let alpha: Vec<usize> = q_mults
        .iter()
        .enumerate()
        .rev()
        .flat_map(|(j, &m)| std::iter::repeat(j).take(m))
        .collect();

    // alpha_1 >= beta_1 >= alpha_2 >= beta_2 >= ...
    let mut holds = true;
    for k in 0..beta.len() {
        if k < alpha.len() && ord[beta[k]][alpha[k]] == Ordering::Greater {
            holds = false;
            break;
        }
        if k + 1 < alpha.len() && ord[beta[k]][alpha[k + 1]] == Ordering::Less {
            holds = false;
            break;
        }
    }
    Ok(InterlacingCertificate {
        holds,
        reason: if holds { InterlaceReason::Interleaved } else { InterlaceReason::NotInterleaved },
        left_roots: left,
        right_roots: right,
    })
}

/// True iff interlaces(ps[i], ps[i+1]) holds for every consecutive pair.
pub fn certify_chain(ps: &[Poly]) -> Result<bool> {
    for w in ps.windows(2) {
        if !interlaces(&w[0], &w[1])?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_frac;

    #[test]
    fn sturm_counts() {
        let p = Poly::from_ints(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(sturm_count(&p, &rat(0), &rat(2)).unwrap(), 1);
        let q = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_count(&q, &rat(-10), &rat(10)).unwrap(), 0);
        assert!(matches!(
            sturm_count(&p, &rat(0), &rat(2)).map(|_| ()),
            Ok(())
        ));
        assert_eq!(
            sturm_count(&Poly::from_ints(&[0, 1]), &rat(0), &rat(1)),
            Err(Error::EndpointIsRoot)
        );
        assert_eq!(
            sturm_count(&Poly::zero(), &rat(0), &rat(1)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn real_rootedness() {
        assert!(is_real_rooted(&Poly::from_ints(&[1, 11, 11, 1])));
        assert!(!is_real_rooted(&Poly::from_ints(&[1, 0, 1])));
        assert!(is_real_rooted(&Poly::zero()));
        assert!(is_real_rooted(&Poly::from_ints(&[0, 1, 1]))); // d_3
        assert!(is_real_rooted(&Poly::from_ints(&[0, 0, 1, 1]))); // x^2(x+1)
        assert!(!is_real_rooted(&Poly::from_ints(&[1, 1, 1])));
    }

    #[test]
    fn isolation_with_multiplicity() {
        let p = Poly::from_ints(&[0, 0, 1, 1]); // x^2 (x+1)
        let iso = isolate_roots(&p).unwrap();
        assert_eq!(iso.intervals.len(), 2);
        assert_eq!(iso.intervals[0].multiplicity, 1); // -1
        assert_eq!(iso.intervals[1].multiplicity, 2); // 0
        assert_eq!(iso.total_multiplicity(), 3);

        let d3 = Poly::from_ints(&[0, 1, 1]);
        let iso = isolate_roots(&d3).unwrap();
        assert_eq!(iso.intervals.len(), 2);
        assert!(iso.intervals.iter().all(|iv| iv.multiplicity == 1));

        let a3 = Poly::from_ints(&[1, 4, 1]); // roots -2 +- sqrt(3)
        let iso = isolate_roots(&a3).unwrap();
        assert_eq!(iso.intervals.len(), 2);
        assert!(iso.intervals[0].hi < iso.intervals[1].lo || iso.intervals[0].hi == iso.intervals[1].lo);
    }

    #[test]
    fn isolate_errors() {
        assert_eq!(isolate_roots(&Poly::zero()), Err(Error::ZeroPolynomial));
        assert_eq!(
            isolate_roots(&Poly::from_ints(&[1, 0, 1])),
            Err(Error::NotRealRooted)
        );
    }

    #[test]
    fn interlacing_examples() {
        // A_3 = 1+4x+x^2 and d_3 = x+x^2: roots -2-sqrt3 <= -1 <= -2+sqrt3 <= 0
        let a3 = Poly::from_ints(&[1, 4, 1]);
        let d3 = Poly::from_ints(&[0, 1, 1]);
        assert!(interlaces(&a3, &d3).unwrap().holds);
        assert!(interlaces(&Poly::zero(), &Poly::from_ints(&[1, 1])).unwrap().holds);
        // common roots via gcd: (1+x) ≺ (1+x)^2
        let p = Poly::from_ints(&[1, 1]);
        let q = Poly::from_ints(&[1, 2, 1]);
        assert!(interlaces(&p, &q).unwrap().holds);
        // self-interlacing
        assert!(interlaces(&a3, &a3).unwrap().holds);
        // not real-rooted
        let c = interlaces(&Poly::from_ints(&[1, 0, 1]), &a3).unwrap();
        assert!(!c.holds);
        assert_eq!(c.reason, InterlaceReason::NotRealRooted);
        // negative coefficients rejected
        assert_eq!(
            interlaces(&Poly::from_ints(&[-1, 1]), &a3).map(|_| ()),
            Err(Error::UnsupportedSignPattern)
        );
    }

    #[test]
    fn interlacing_direction_matters() {
        // x ≺ x+1 is false, x+1 ≺ x is true
        let low = Poly::from_ints(&[1, 1]);
        let high = Poly::from_ints(&[0, 1]);
        assert!(interlaces(&low, &high).unwrap().holds);
        assert!(!interlaces(&high, &low).unwrap().holds);
    }

    #[test]
    fn chain_certification() {
        let a1 = Poly::one();
        let a2 = Poly::from_ints(&[1, 1]);
        let a3 = Poly::from_ints(&[1, 4, 1]);
        assert!(certify_chain(&[a1, a2, a3]).unwrap());
        assert!(!certify_chain(&[Poly::from_ints(&[1, 0, 1]), Poly::from_ints(&[1, 1, 1])]).unwrap());
        assert!(certify_chain(&[Poly::from_ints(&[1, 2])]).unwrap());
    }

    #[test]
    fn close_but_distinct_roots_separate() {
        // p has roots 0 and -1/1000, q has root -1/2000 strictly between
        let p = &Poly::x() * &Poly::new(vec![rat_frac(1, 1000), rat(1)]);
        let q = Poly::new(vec![rat_frac(1, 2000), rat(1)]);
        assert!(interlaces(&q, &p).unwrap().holds);
        // and a root just outside breaks it
        let q2 = Poly::new(vec![rat_frac(1, 500), rat(1)]);
        assert!(!interlaces(&q2, &p).unwrap().holds);
    }
}
