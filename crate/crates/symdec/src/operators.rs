//! The linear operators: subdivision E and its inverse, the diamond
//! product, the deranged map D, the valuation operators T_k and phi_k, the
//! h-from-i transform, and cone-membership tests in the triangular bases.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::families::derangement;
use crate::poly::{
    binomial, factorial, rat, stirling2, to_xm1_basis, xm1_basis_elem, Poly, Rat,
};

/// Subdivision operator: E(binom(x,k)) = x^k, i.e. E(x^m) = sum_k k! S(m,k) x^k.
pub fn subdivision_e(p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeffs: Vec<Rat> = (0..=m)
            .map(|k| c * Rat::from_integer(factorial(k) * stirling2(m, k)))
            .collect();
        out = &out + &Poly::new(coeffs);
    }
    out
}

/// Binomial-coefficient polynomial binom(x, k) = x(x-1)...(x-k+1)/k!.
fn binom_poly(k: usize) -> Poly {
    let mut p = Poly::one();
    for i in 0..k {
        p = &p * &Poly::new(vec![rat(-(i as i64)), rat(1)]);
    }
    p.scale(&Rat::from_integer(factorial(k)).recip())
}

/// Exact inverse of the subdivision operator: x^k maps back to binom(x, k).
pub fn subdivision_e_inverse(q: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (k, c) in q.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out = &out + &binom_poly(k).scale(c);
        }
    }
    out
}

/// Diamond product via the closed form
/// sum_k p^(k)/k! * q^(k)/k! * x^k (x+1)^k.
pub fn diamond(p: &Poly, q: &Poly) -> Poly {
    let xx1 = Poly::from_ints(&[0, 1, 1]); // x(x+1)
    let mut out = Poly::zero();
    let mut dp = p.clone();
    let mut dq = q.clone();
    let mut weight = Poly::one();
    let mut k = 0usize;
    while !dp.is_zero() && !dq.is_zero() {
        let kf = Rat::from_integer(factorial(k) * factorial(k)).recip();
        out = &out + &(&(&dp * &dq).scale(&kf) * &weight);
        dp = dp.derivative();
        dq = dq.derivative();
        weight = &weight * &xx1;
        k += 1;
    }
    out
}

/// E_k^d = E(x^k (x+1)^(d-k)).
pub fn e_basis(k: usize, d: usize) -> Result<Poly> {
    if k > d {
        return Err(Error::OutOfRange(format!("E_k^d needs k <= d, got k={k}, d={d}")));
    }
    Ok(subdivision_e(&xm1_basis_elem(k, d, 1)))
}

/// Deranged map: x^k maps to the k-th derangement polynomial, linearly.
pub fn deranged_d(p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out = &out + &derangement(k).scale(c);
        }
    }
    out
}

/// T_k(f)(x) = sum_{i=0}^k (-1)^(k-i) binom(k,i) f((i+1)x).
pub fn t_k(f: &Poly, k: usize) -> Poly {
    let mut out = Poly::zero();
    for i in 0..=k {
        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
        let c = Rat::from_integer(binomial(k, i) * num_bigint::BigInt::from(sign));
        out = &out + &f.dilate(&rat(i as i64 + 1)).scale(&c);
    }
    out
}

/// phi_k(f) = T_k(f) / k!.
pub fn phi_k(f: &Poly, k: usize) -> Poly {
    t_k(f, k).scale(&Rat::from_integer(factorial(k)).recip())
}

/// The h-polynomial of i: sum_m i(m) x^m = h / (1-x)^(d+1), with
/// h_k = sum_{j=0}^k (-1)^j binom(d+1, j) i(k-j). The same convolution must
/// vanish for k = d+1..2d+1, which is asserted.
pub fn h_from_i(i: &Poly, d: usize) -> Result<Poly> {
    if let Some(deg) = i.degree() {
        if deg > d {
            return Err(Error::DegreeTooSmall { degree: deg, bound: d });
        }
    }
    let conv = |k: usize| -> Rat {
        let mut acc = Rat::zero();
        for j in 0..=k.min(d + 1) {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let term = Rat::from_integer(binomial(d + 1, j) * num_bigint::BigInt::from(sign))
                * i.evaluate(&rat((k - j) as i64));
            acc = acc + term;
        }
        acc
    };
    let h = Poly::new((0..=d).map(conv).collect());
    for k in d + 1..=2 * d + 1 {
        if !conv(k).is_zero() {
            return Err(Error::NonvanishingTail);
        }
    }
    Ok(h)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConeBasis {
    /// x^k (x+1)^(d-k)
    Xx1,
    /// E_k^d
    E,
    /// (2x)^k (2x+1)^(d-k)
    B2,
    /// x^k (mx+1)^(d-k)
    Bm(i64),
}

/// Coordinates of a polynomial in one of the triangular cone bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCoefficients {
    pub c: Vec<Rat>,
    pub d: usize,
    pub basis: ConeBasis,
}

/// Result of a cone-membership test: the unique coordinates, flagged by
/// whether they are all nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeCheck {
    InCone(ConeCoefficients),
    NotInCone { coords: Vec<Rat> },
}

pub fn cone_membership(p: &Poly, d: usize, basis: ConeBasis) -> Result<ConeCheck> {
    let coords = match basis {
        ConeBasis::Xx1 => to_xm1_basis(p, d, 1)?,
        ConeBasis::Bm(m) => to_xm1_basis(p, d, m)?,
        ConeBasis::B2 => {
            // (2x)^k(2x+1)^(d-k) = 2^k * x^k(2x+1)^(d-k)
            let raw = to_xm1_basis(p, d, 2)?;
            let mut pow = Rat::from_integer(1.into());
            raw.into_iter()
                .map(|c| {
                    let v = c / &pow;
                    pow = &pow * rat(2);
                    v
                })
                .collect()
        }
        ConeBasis::E => to_xm1_basis(&subdivision_e_inverse(p), d, 1)?,
    };
    if coords.iter().any(|c| c.is_negative()) {
        Ok(ConeCheck::NotInCone { coords })
    } else {
        Ok(ConeCheck::InCone(ConeCoefficients { c: coords, d, basis }))
    }
}
