//! Lattice zonotopes: Ehrhart polynomial via independent generator subsets,
//! brute-force lattice-point oracle, h* under combinatorially positive
//! valuations, and the centrally symmetric cone test.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::operators::{cone_membership, h_from_i, t_k, ConeBasis, ConeCheck};
use crate::poly::{rat, xm1_basis_elem, Int, Poly, Rat};

/// A lattice zonotope given by integer generator columns in Z^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonotopeSpec {
    generators: Vec<Vec<Int>>,
    n: usize,
}

/// Coefficients alpha_0..alpha_d of a nonnegative combination of the f*
/// basis valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationSpec {
    pub alpha: Vec<Rat>,
}

impl ValuationSpec {
    pub fn new(alpha: Vec<Rat>) -> Result<Self> {
        if alpha.iter().any(|a| a.is_negative()) {
            return Err(Error::NegativeCoefficient);
        }
        Ok(ValuationSpec { alpha })
    }
}

impl ZonotopeSpec {
    pub fn new(generators: Vec<Vec<Int>>, n: usize) -> Result<Self> {
        if generators.iter().any(|g| g.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: generators.iter().map(|g| g.len()).find(|&l| l != n).unwrap_or(n),
            });
        }
        Ok(ZonotopeSpec { generators, n })
    }

    pub fn from_cols(cols: &[&[i64]]) -> Self {
        let n = cols.first().map(|c| c.len()).unwrap_or(0);
        let generators = cols
            .iter()
            .map(|c| c.iter().map(|&v| Int::from(v)).collect())
            .collect();
        ZonotopeSpec { generators, n }
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// d = rank of the generator matrix.
    pub fn dim(&self) -> usize {
        rank(&self.generators.iter().map(|g| to_rat_vec(g)).collect::<Vec<_>>())
    }

    /// Generators doubled, giving the lattice translate of the centrally
    /// symmetric zonotope with segments from -u to u.
    pub fn doubled(&self) -> ZonotopeSpec {
        ZonotopeSpec {
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(|v| v * Int::from(2)).collect())
                .collect(),
            n: self.n,
        }
    }
}

fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Row-reduce a list of vectors in place; returns the rank.
fn rank(vecs: &[Vec<Rat>]) -> usize {
    let mut rows: Vec<Vec<Rat>> = vecs.to_vec();
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0usize;
    for c in 0..cols {
        if let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            rows.swap(r, p);
            let inv = rows[r][c].clone().recip();
            for j in c..cols {
                rows[r][j] = &rows[r][j] * &inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for j in c..cols {
                        rows[i][j] = &rows[i][j] - &(&f * &rows[r][j]);
                    }
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
    }
    r
}

/// Solve for y with sum_j y_j cols[j] = target; the columns must be
/// linearly independent, so a solution is unique when it exists.
fn solve_in_columns(cols: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let n = target.len();
    let k = cols.len();
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..k {
        if let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) {
            aug.swap(r, p);
            let inv = aug[r][c].clone().recip();
            for j in c..=k {
                aug[r][j] = &aug[r][j] * &inv;
            }
            for i in 0..n {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in c..=k {
                        aug[i][j] = &aug[i][j] - &(&f * &aug[r][j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    // inconsistent if a zero row has nonzero rhs
    for i in r..n {
        if !aug[i][k].is_zero() {
            return None;
        }
    }
    let mut y = vec![Rat::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        y[c] = aug[row][k].clone();
    }
    Some(y)
}

/// A nonzero kernel vector of the (rows x k) matrix, or None if the kernel
/// is trivial.
fn kernel_vector(rows: &[Vec<Rat>], k: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..k {
        if let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            let inv = m[r][c].clone().recip();
            for j in c..k {
                m[r][j] = &m[r][j] * &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..k {
                        m[i][j] = &m[i][j] - &(&f * &m[r][j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rat::zero(); k];
    v[free] = Rat::one();
    for (row, &c) in pivots.iter().enumerate() {
        v[c] = -m[row][free].clone();
    }
    Some(v)
}

fn det(mat: &[Vec<Rat>]) -> Rat {
    let k = mat.len();
    let mut m: Vec<Vec<Rat>> = mat.to_vec();
    let mut d = Rat::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].clone().recip();
        for i in c + 1..k {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..k {
                    m[i][j] = &m[i][j] - &(&f * &m[c][j]);
                }
            }
        }
    }
    d
}

/// Relative volume of an independent generator set: gcd of all maximal
/// minors of the n x k submatrix.
fn relative_volume(cols: &[&Vec<Int>], n: usize) -> Int {
    let k = cols.len();
    let mut g = Int::zero();
    let mut rows: Vec<usize> = (0..k).collect();
    loop {
        let minor: Vec<Vec<Rat>> = rows
            .iter()
            .map(|&i| cols.iter().map(|c| Rat::from_integer(c[i].clone())).collect())
            .collect();
        let d = det(&minor).to_integer();
        g = g.gcd(&d);
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return g;
            }
            i -= 1;
            if rows[i] != i + n - k {
                rows[i] += 1;
                for j in i + 1..k {
                    rows[j] = rows[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// i(Z;x) = sum over linearly independent column subsets S of g(S) x^|S|.
pub fn ehrhart(z: &ZonotopeSpec) -> Poly {
    let g = z.generators.len();
    let d = z.dim();
    let mut coeffs = vec![Rat::zero(); d + 1];
    for mask in 0u32..(1 << g) {
        let cols: Vec<&Vec<Int>> = (0..g)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &z.generators[i])
            .collect();
        let k = cols.len();
        if k > d {
            continue;
        }
        let as_rat: Vec<Vec<Rat>> = cols.iter().map(|c| to_rat_vec(c)).collect();
        if rank(&as_rat) != k {
            continue;
        }
        let vol = if k == 0 { Int::one() } else { relative_volume(&cols, z.n) };
        coeffs[k] = &coeffs[k] + Rat::from_integer(vol);
    }
    Poly::new(coeffs)
}

const BOX_CAP: u64 = 4_000_000;

struct SpanGeometry {
    basis: Vec<Vec<Rat>>,
    // (normal, min slack sum, max slack sum) per facet direction
    facets: Vec<(Vec<Rat>, Rat, Rat)>,
}

fn span_geometry(z: &ZonotopeSpec) -> SpanGeometry {
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for gcol in &z.generators {
        let cand = to_rat_vec(gcol);
        let mut trial = basis.clone();
        trial.push(cand.clone());
        if rank(&trial) > basis.len() {
            basis.push(cand);
        }
    }
    let r = basis.len();
    let gens: Vec<Vec<Rat>> = z
        .generators
        .iter()
        .map(|gcol| solve_in_columns(&basis, &to_rat_vec(gcol)).expect("generator lies in span"))
        .collect();
    let mut facets = Vec::new();
    if r > 0 {
        let g = gens.len();
        for mask in 0u32..(1 << g) {
            let sub: Vec<Vec<Rat>> = (0..g)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| gens[i].clone())
                .collect();
            if sub.len() != r - 1 || rank(&sub) != r - 1 {
                continue;
            }
            let Some(c) = kernel_vector(&sub, r) else { continue };
            let dots: Vec<Rat> = gens
                .iter()
                .map(|u| u.iter().zip(&c).map(|(a, b)| a * b).sum())
                .collect();
            let lo: Rat = dots.iter().filter(|v| v.is_negative()).sum();
            let hi: Rat = dots.iter().filter(|v| v.is_positive()).sum();
            facets.push((c, lo, hi));
        }
    }
    SpanGeometry { basis, facets }
}

impl SpanGeometry {
    fn contains(&self, point: &[Rat], m: i64) -> bool {
        if self.basis.is_empty() {
            return point.iter().all(|x| x.is_zero());
        }
        let Some(coords) = solve_in_columns(&self.basis, point) else {
            return false;
        };
        let m = rat(m);
        self.facets.iter().all(|(c, lo, hi)| {
            let v: Rat = coords.iter().zip(c).map(|(a, b)| a * b).sum();
            &(lo * &m) <= &v && &v <= &(hi * &m)
        })
    }
}

/// Count |mZ ∩ Z^n| for m = 0..maxdilate by box enumeration, then
/// interpolate the Ehrhart polynomial through m = 0..d and confirm the
/// remaining counts.
pub fn ehrhart_bruteforce(z: &ZonotopeSpec, maxdilate: usize) -> Result<Poly> {
    let d = z.dim();
    if maxdilate < d {
        return Err(Error::OutOfRange(format!(
            "need maxdilate >= rank, got {maxdilate} < {d}"
        )));
    }
    let geom = span_geometry(z);
    let mut counts = Vec::with_capacity(maxdilate + 1);
    for m in 0..=maxdilate {
        counts.push(count_points(z, &geom, m as i64)?);
    }
    let pts: Vec<(Rat, Rat)> = (0..=d)
        .map(|m| (rat(m as i64), Rat::from_integer(counts[m].clone())))
        .collect();
    let p = lagrange(&pts);
    for m in d + 1..=maxdilate {
        if p.evaluate(&rat(m as i64)) != Rat::from_integer(counts[m].clone()) {
            return Err(Error::Internal(format!(
                "lattice counts of dilate {m} are not polynomial of degree {d}"
            )));
        }
    }
    Ok(p)
}

fn count_points(z: &ZonotopeSpec, geom: &SpanGeometry, m: i64) -> Result<Int> {
    let n = z.n;
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for j in 0..n {
        for g in &z.generators {
            let v = g[j].to_i64().ok_or_else(|| Error::TooLarge("generator entry".into()))?;
            if v < 0 {
                lo[j] += v * m;
            } else {
                hi[j] += v * m;
            }
        }
    }
    let mut size = 1u64;
    for j in 0..n {
        size = size.saturating_mul((hi[j] - lo[j] + 1) as u64);
        if size > BOX_CAP {
            return Err(Error::TooLarge(format!("enumeration box of {size}+ points")));
        }
    }
    let mut count = Int::zero();
    let mut x = lo.clone();
    loop {
        let pt: Vec<Rat> = x.iter().map(|&v| rat(v)).collect();
        if geom.contains(&pt, m) {
            count += 1;
        }
        let mut j = 0;
        while j < n {
            if x[j] < hi[j] {
                x[j] += 1;
                break;
            }
            x[j] = lo[j];
            j += 1;
        }
        if j == n {
            break;
        }
    }
    if n == 0 {
        count = Int::one();
    }
    Ok(count)
}

fn lagrange(pts: &[(Rat, Rat)]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut term = Poly::constant(yi.clone());
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                let denom = (xi - xj).recip();
                term = &term * &Poly::new(vec![-xj * &denom, denom]);
            }
        }
        out = &out + &term;
    }
    out
}

/// Coordinates of the Ehrhart polynomial in the x^k(x+1)^(d-k) basis; the
/// Lawrence polytope's h* entries, which must be nonnegative integers.
pub fn lawrence_hstar(z: &ZonotopeSpec) -> Result<Vec<Rat>> {
    let d = z.dim();
    let coords = crate::poly::to_xm1_basis(&ehrhart(z), d, 1)?;
    if coords.iter().any(|c| c.is_negative() || !c.is_integer()) {
        return Err(Error::NegativeCoefficient);
    }
    Ok(coords)
}

/// Interior lattice points via reciprocity: (-1)^d i(Z;-1).
pub fn interior_point_count(z: &ZonotopeSpec) -> Int {
    let d = z.dim();
    let v = ehrhart(z).evaluate(&rat(-1));
    let v = v.to_integer();
    if d % 2 == 0 {
        v
    } else {
        -v
    }
}

/// h* of the zonotope under a valuation; None gives the Ehrhart h*.
pub fn hstar(z: &ZonotopeSpec, v: Option<&ValuationSpec>) -> Result<Poly> {
    let d = z.dim();
    let i = ehrhart(z);
    let iv = match v {
        None => i,
        Some(val) => {
            let mut acc = Poly::zero();
            for (k, a) in val.alpha.iter().enumerate() {
                if !a.is_zero() {
                    acc = &acc + &t_k(&i, k).scale(a);
                }
            }
            acc
        }
    };
    h_from_i(&iv, d)
}

/// Coordinates of the Ehrhart polynomial in the (2x)^k(2x+1)^(d-k) basis;
/// nonnegative exactly when the zonotope is in centrally symmetric form.
pub fn decompose_cs(z: &ZonotopeSpec) -> Result<Vec<Rat>> {
    let d = z.dim();
    match cone_membership(&ehrhart(z), d, ConeBasis::B2)? {
        ConeCheck::InCone(cc) => Ok(cc.c),
        ConeCheck::NotInCone { .. } => Err(Error::NotCentrallySymmetricForm),
    }
}

/// h* of the half-open cube [-1,1]^d with k facets removed:
/// h of i = (2x)^k (2x+1)^(d-k).
pub fn halfopen_cube_hstar(k: usize, d: usize) -> Result<Poly> {
    if k > d {
        return Err(Error::OutOfRange(format!("need k <= d, got k={k}, d={d}")));
    }
    let scale = Rat::from_integer(Int::from(2).pow(k as u32));
    h_from_i(&xm1_basis_elem(k, d, 2).scale(&scale), d)
}

/// Built-in test corpus: ambient dimension <= 3, entries in -2..=2, at most
/// four generators.
pub fn corpus() -> Vec<ZonotopeSpec> {
    vec![
        ZonotopeSpec::from_cols(&[&[1]]),
        ZonotopeSpec::from_cols(&[&[2]]),
        ZonotopeSpec::from_cols(&[&[1], &[1]]),
        ZonotopeSpec::from_cols(&[&[2], &[1]]),
        ZonotopeSpec::from_cols(&[&[1, 0], &[0, 1]]),
        ZonotopeSpec::from_cols(&[&[2, 0], &[0, 2]]),
        ZonotopeSpec::from_cols(&[&[1, 0], &[0, 1], &[1, 1]]),
        ZonotopeSpec::from_cols(&[&[1, 0], &[0, 1], &[1, -1]]),
        ZonotopeSpec::from_cols(&[&[2, 0], &[0, 1]]),
        ZonotopeSpec::from_cols(&[&[1, 1], &[1, -1]]),
        ZonotopeSpec::from_cols(&[&[2, 1], &[1, 2]]),
        ZonotopeSpec::from_cols(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]),
        ZonotopeSpec::from_cols(&[&[1, 2], &[2, 1], &[1, 1]]),
        ZonotopeSpec::from_cols(&[&[1, 1]]),
        ZonotopeSpec::from_cols(&[&[2, 2], &[1, 0]]),
        ZonotopeSpec::from_cols(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ZonotopeSpec::from_cols(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]),
        ZonotopeSpec::from_cols(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]),
        ZonotopeSpec::from_cols(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]),
        ZonotopeSpec::from_cols(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]),
        ZonotopeSpec::from_cols(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]),
        ZonotopeSpec::from_cols(&[&[1, 0], &[1, 1], &[1, 2]]),
        ZonotopeSpec::from_cols(&[&[0, 1, 2], &[1, 0, 1]]),
        ZonotopeSpec::from_cols(&[&[2, 0], &[0, 2], &[2, 2]]),
    ]
}
