//! Exact univariate polynomial arithmetic over the rationals, the
//! degree-indexed reversal and reflection maps, and the x^k(x+1)^(d-k)
//! basis conversions used by every other module.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Parse a rational written as "num/den" or an integer literal.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<Int> {
        Int::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Render a rational as "num/den" or a plain integer.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense polynomial with exact rational coefficients, index k holding the
/// coefficient of x^k. The zero polynomial is the empty sequence; nonzero
/// polynomials never carry trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    pub fn x() -> Self {
        Poly::monomial(1, rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(k: usize, c: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient; None for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn has_nonneg_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn evaluate(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat(i as i64 + 1))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// p(c*x): scale the argument.
    pub fn dilate(&self, c: &Rat) -> Poly {
        let mut pow = Rat::one();
        Poly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let v = a * &pow;
                    pow = &pow * c;
                    v
                })
                .collect(),
        )
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact division by x^k; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Poly> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        if self.coeffs.len() < k || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("division by x^k leaves remainder".into()));
        }
        Ok(Poly::new(self.coeffs[k..].to_vec()))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Substitute q for x.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Quotient and remainder with deg(rem) < deg(divisor).
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - &(c * &factor);
                    rem[k + i] = v;
                }
            }
            quot[k] = factor;
            rem.pop();
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Division that must be exact; a nonzero remainder is an internal bug.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal("exact division left a remainder".into()));
        }
        Ok(q)
    }

    /// Primitive gcd with positive leading coefficient; gcd(0, q) = q.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        if a.leading_coeff().is_negative() {
            a = -&a;
        }
        a
    }

    /// Integer-coefficient polynomial with content one and the same roots,
    /// keeping the sign of the leading coefficient. Zero maps to zero.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den = Int::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * &den / c.denom())
            .collect();
        let mut content = Int::zero();
        for v in &ints {
            content = num_integer::gcd(content, v.clone());
        }
        Poly::new(
            ints.iter()
                .map(|v| Rat::from_integer(v / &content))
                .collect(),
        )
    }

    /// Squarefree part p / gcd(p, p').
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        self.exact_div(&g)
            .expect("gcd divides")
            .primitive_part()
    }
}

impl fmt::Display for Poly {
    /// Comma-separated rationals, lowest-degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(format_rat).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Poly::zero());
        }
        let coeffs = s
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<Rat>>>()?;
        Ok(Poly::new(coeffs))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = v;
            }
        }
        Poly::new(coeffs)
    }
}

fn check_degree(p: &Poly, d: usize) -> Result<()> {
    match p.degree() {
        Some(deg) if deg > d => Err(Error::DegreeTooSmall { degree: deg, bound: d }),
        _ => Ok(()),
    }
}

/// I_d(p) = x^d p(1/x): coefficient reversal within a window of length d+1.
pub fn reverse_i(p: &Poly, d: usize) -> Result<Poly> {
    check_degree(p, d)?;
    let coeffs = (0..=d).map(|k| p.coeff(d - k)).collect();
    Ok(Poly::new(coeffs))
}

/// R_d(p) = (-1)^d p(-1-x).
pub fn reflect_r(p: &Poly, d: usize) -> Result<Poly> {
    check_degree(p, d)?;
    let arg = Poly::from_ints(&[-1, -1]);
    let q = p.compose(&arg);
    Ok(if d % 2 == 0 { q } else { -&q })
}

/// The basis element x^k(x+1)^(d-k), or more generally x^k(mx+1)^(d-k).
pub fn xm1_basis_elem(k: usize, d: usize, m: i64) -> Poly {
    let lin = Poly::from_ints(&[1, m]);
    lin.pow((d - k) as u32).shift_up(k)
}

/// Unique coordinates of p in the basis x^k(mx+1)^(d-k), k = 0..d, found by
/// triangular elimination: c_0 = p(0), subtract, divide by x, recurse.
pub fn to_xm1_basis(p: &Poly, d: usize, m: i64) -> Result<Vec<Rat>> {
    check_degree(p, d)?;
    let lin = Poly::from_ints(&[1, m]);
    let mut c = Vec::with_capacity(d + 1);
    let mut rem = p.clone();
    for k in 0..=d {
        let c_k = rem.coeff(0);
        rem = &rem - &lin.pow((d - k) as u32).scale(&c_k);
        rem = rem.shift_down(1)?;
        c.push(c_k);
    }
    if !rem.is_zero() {
        return Err(Error::Internal("triangular elimination left residue".into()));
    }
    Ok(c)
}

pub fn from_xm1_basis(c: &[Rat], d: usize, m: i64) -> Result<Poly> {
    if c.len() != d + 1 {
        return Err(Error::LengthMismatch { expected: d + 1, got: c.len() });
    }
    let mut p = Poly::zero();
    for (k, ck) in c.iter().enumerate() {
        p = &p + &xm1_basis_elem(k, d, m).scale(ck);
    }
    Ok(p)
}

/// Coordinates in the basis x^k(x+1)^(d-k).
pub fn to_xx1_basis(p: &Poly, d: usize) -> Result<Vec<Rat>> {
    to_xm1_basis(p, d, 1)
}

pub fn from_xx1_basis(c: &[Rat], d: usize) -> Result<Poly> {
    from_xm1_basis(c, d, 1)
}

/// Stirling numbers of the second kind via S(m+1,k) = k S(m,k) + S(m,k-1),
/// with S(0,0) = 1 and S(n,0) = S(0,n) = 0 for n > 0.
pub fn stirling2(m: usize, k: usize) -> Int {
    if k > m {
        return Int::zero();
    }
    let mut row = vec![Int::zero(); k + 1];
    row[0] = Int::one();
    for i in 1..=m {
        let top = k.min(i);
        for j in (1..=top).rev() {
            row[j] = Int::from(j) * &row[j] + &row[j - 1];
        }
        row[0] = Int::zero();
    }
    row[k].clone()
}

pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut acc = Int::one();
    for i in 0..k.min(n - k) {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * Int::from(i))
}
