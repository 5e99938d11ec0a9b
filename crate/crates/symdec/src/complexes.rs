//! h-vectors of simplicial complexes, barycentric subdivision
//! h-polynomials, the level/doubly-CM coefficient gate, and matroid
//! independence complexes.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::operators::h_from_i;
use crate::poly::{from_xm1_basis, rat, to_xm1_basis, Poly, Rat};

/// An h-vector h_0..h_d of a (d-1)-dimensional complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub h: Vec<Rat>,
    pub d: usize,
}

impl HVector {
    pub fn new(h: Vec<Rat>, d: usize) -> Result<Self> {
        if h.len() != d + 1 {
            return Err(Error::LengthMismatch { expected: d + 1, got: h.len() });
        }
        if h.iter().any(|x| x.is_negative()) {
            return Err(Error::NegativeCoefficient);
        }
        Ok(HVector { h, d })
    }

    pub fn from_ints(h: &[i64], d: usize) -> Result<Self> {
        Self::new(h.iter().map(|&v| rat(v)).collect(), d)
    }
}

/// h-polynomial of the barycentric subdivision, through the face-count
/// identity i(x) = sum_k h_k x^k (x+1)^(d-k).
pub fn sd_h(hv: &HVector) -> Result<Poly> {
    let i = from_xm1_basis(&hv.h, hv.d, 1)?;
    h_from_i(&i, hv.d)
}

/// The degree and partial-sum inequalities satisfied by level and doubly
/// Cohen-Macaulay complexes: h_d > 0 and
/// h_0 + ... + h_i <= h_d + ... + h_{d-i} for all i.
pub fn level_2cm_check(hv: &HVector) -> bool {
    if hv.h[hv.d].is_zero() {
        return false;
    }
    let mut front = Rat::zero();
    let mut back = Rat::zero();
    for i in 0..=hv.d {
        front = &front + &hv.h[i];
        back = &back + &hv.h[hv.d - i];
        if front > back {
            return false;
        }
    }
    true
}

/// A simplicial complex given by its facets over ground set 1..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<BTreeSet<usize>>,
}

impl SimplicialComplex {
    pub fn new(facets: Vec<BTreeSet<usize>>) -> Result<Self> {
        for (i, f) in facets.iter().enumerate() {
            for (j, g) in facets.iter().enumerate() {
                if i != j && f.is_subset(g) {
                    return Err(Error::OutOfRange(format!(
                        "facet {f:?} is contained in facet {g:?}"
                    )));
                }
            }
        }
        if facets.is_empty() {
            return Err(Error::OutOfRange("need at least one facet".into()));
        }
        Ok(SimplicialComplex { facets })
    }

    pub fn from_slices(facets: &[&[usize]]) -> Result<Self> {
        Self::new(facets.iter().map(|f| f.iter().copied().collect()).collect())
    }

    /// All faces, including the empty face.
    pub fn faces(&self) -> BTreeSet<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let verts: Vec<usize> = f.iter().copied().collect();
            for mask in 0u32..(1 << verts.len()) {
                out.insert(
                    (0..verts.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| verts[i])
                        .collect(),
                );
            }
        }
        out
    }

    /// d = size of the largest face (dimension plus one).
    pub fn formal_degree(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// Face-count polynomial sum_j f_{j-1} x^j.
    pub fn f_polynomial(&self) -> Poly {
        let mut counts = vec![Rat::zero(); self.formal_degree() + 1];
        for f in self.faces() {
            counts[f.len()] = &counts[f.len()] + rat(1);
        }
        Poly::new(counts)
    }

    pub fn h_vector(&self) -> Result<HVector> {
        let d = self.formal_degree();
        HVector::new(to_xm1_basis(&self.f_polynomial(), d, 1)?, d)
    }
}

const FACE_CAP: usize = 12;

/// h-polynomial of the barycentric subdivision computed directly: vertices
/// are nonempty faces, faces are chains under inclusion.
pub fn sd_oracle(sc: &SimplicialComplex) -> Result<Poly> {
    let faces: Vec<BTreeSet<usize>> = sc.faces().into_iter().filter(|f| !f.is_empty()).collect();
    if faces.len() > FACE_CAP {
        return Err(Error::TooLarge(format!(
            "{} faces exceeds the subdivision cap of {FACE_CAP}",
            faces.len()
        )));
    }
    let d = sc.formal_degree();
    let mut counts = vec![Rat::zero(); d + 1];
    counts[0] = rat(1); // empty chain
    // count chains extending from each face downward
    fn extend(
        faces: &[BTreeSet<usize>],
        top: usize,
        len: usize,
        counts: &mut Vec<Rat>,
    ) {
        counts[len] = &counts[len] + rat(1);
        for (i, f) in faces.iter().enumerate() {
            if f.len() < faces[top].len() && f.is_subset(&faces[top]) {
                extend(faces, i, len + 1, counts);
            }
        }
    }
    for top in 0..faces.len() {
        extend(&faces, top, 1, &mut counts);
    }
    Ok(Poly::new(to_xm1_basis(&Poly::new(counts), d, 1)?))
}

/// A matroid on ground set 1..=n given by its bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    bases: Vec<BTreeSet<usize>>,
}

const GROUND_CAP: usize = 12;

impl Matroid {
    pub fn new(n: usize, bases: Vec<BTreeSet<usize>>) -> Result<Self> {
        if n > GROUND_CAP {
            return Err(Error::TooLarge(format!("ground set capped at {GROUND_CAP}")));
        }
        if bases.is_empty() {
            return Err(Error::InvalidMatroid("no bases".into()));
        }
        let rank = bases[0].len();
        for b in &bases {
            if b.len() != rank {
                return Err(Error::InvalidMatroid("bases of unequal size".into()));
            }
            if b.iter().any(|&e| e == 0 || e > n) {
                return Err(Error::InvalidMatroid("basis element outside ground set".into()));
            }
        }
        let set: BTreeSet<&BTreeSet<usize>> = bases.iter().collect();
        // basis exchange: for a in A \ B there is b in B \ A with A - a + b a basis
        for a in &bases {
            for b in &bases {
                for &x in a.difference(b) {
                    let ok = b.difference(a).any(|&y| {
                        let mut c = a.clone();
                        c.remove(&x);
                        c.insert(y);
                        set.contains(&c)
                    });
                    if !ok {
                        return Err(Error::InvalidMatroid(format!(
                            "exchange fails for {a:?}, {b:?} at element {x}"
                        )));
                    }
                }
            }
        }
        Ok(Matroid { n, bases })
    }

    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::OutOfRange(format!("U_{{k,n}} needs k <= n, got k={k}, n={n}")));
        }
        let mut bases = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k {
                bases.push((1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect());
            }
        }
        Matroid::new(n, bases)
    }

    /// Graphic matroid: ground set indexes the edge list, bases are the
    /// maximal spanning forests.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let m = edges.len();
        if m > GROUND_CAP {
            return Err(Error::TooLarge(format!("edge list capped at {GROUND_CAP}")));
        }
        let forest_size = |mask: u32| -> Option<usize> {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(parent: &mut Vec<usize>, x: usize) -> usize {
                if parent[x] != x {
                    let r = find(parent, parent[x]);
                    parent[x] = r;
                }
                parent[x]
            }
            let mut used = 0;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (ru, rv) = (find(&mut parent, u - 1), find(&mut parent, v - 1));
                    if ru == rv {
                        return None; // cycle
                    }
                    parent[ru] = rv;
                    used += 1;
                }
            }
            Some(used)
        };
        let rank = (0u32..(1 << m))
            .filter_map(&forest_size)
            .max()
            .unwrap_or(0);
        let mut bases = Vec::new();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize == rank && forest_size(mask) == Some(rank) {
                bases.push((1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect());
            }
        }
        Matroid::new(m, bases)
    }

    pub fn rank(&self) -> usize {
        self.bases[0].len()
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn is_independent(&self, s: &BTreeSet<usize>) -> bool {
        self.bases.iter().any(|b| s.is_subset(b))
    }

    /// h-vector of the independence complex.
    pub fn h_vector(&self) -> Result<HVector> {
        let d = self.rank();
        let mut counts = vec![Rat::zero(); d + 1];
        for mask in 0u32..(1 << self.n) {
            let s: BTreeSet<usize> =
                (1..=self.n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            if s.len() <= d && self.is_independent(&s) {
                counts[s.len()] = &counts[s.len()] + rat(1);
            }
        }
        HVector::new(to_xm1_basis(&Poly::new(counts), d, 1)?, d)
    }

    /// True iff no element lies in every basis.
    pub fn is_coloop_free(&self) -> bool {
        !(1..=self.n).any(|e| self.bases.iter().all(|b| b.contains(&e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sd_h_examples() {
        let hv = HVector::from_ints(&[1, 0, 0, 0, 0], 4).unwrap();
        assert_eq!(sd_h(&hv).unwrap(), crate::families::eulerian(4));
        let hv = HVector::from_ints(&[1, 1], 1).unwrap();
        assert_eq!(sd_h(&hv).unwrap(), Poly::from_ints(&[1, 1]));
        let hv = HVector::from_ints(&[1], 0).unwrap();
        assert_eq!(sd_h(&hv).unwrap(), Poly::one());
        assert!(HVector::from_ints(&[1, 1], 2).is_err());
        assert!(HVector::from_ints(&[1, -1], 1).is_err());
    }

    #[test]
    fn level_gate() {
        assert!(level_2cm_check(&HVector::from_ints(&[1, 2, 1], 2).unwrap()));
        assert!(!level_2cm_check(&HVector::from_ints(&[1, 1, 0], 2).unwrap()));
        assert!(level_2cm_check(&HVector::from_ints(&[1, 1], 1).unwrap()));
        assert!(level_2cm_check(&HVector::from_ints(&[1, 3, 1], 2).unwrap()));
        assert!(!level_2cm_check(&HVector::from_ints(&[2, 0, 1], 2).unwrap()));
        assert!(!level_2cm_check(&HVector::from_ints(&[1, 2, 0, 1], 3).unwrap()));
    }

    #[test]
    fn complex_h_vectors() {
        let edge = SimplicialComplex::from_slices(&[&[1, 2]]).unwrap();
        assert_eq!(edge.f_polynomial(), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(edge.h_vector().unwrap().h, vec![rat(1), rat(0), rat(0)]);
        let tri_bd = SimplicialComplex::from_slices(&[&[1, 2], &[2, 3], &[1, 3]]).unwrap();
        assert_eq!(tri_bd.h_vector().unwrap().h, vec![rat(1), rat(1), rat(1)]);
        assert!(SimplicialComplex::from_slices(&[&[1, 2], &[1]]).is_err());
    }

    #[test]
    fn sd_oracle_matches_sd_h() {
        let vertex = SimplicialComplex::from_slices(&[&[1]]).unwrap();
        assert_eq!(sd_oracle(&vertex).unwrap(), Poly::one());
        let edge = SimplicialComplex::from_slices(&[&[1, 2]]).unwrap();
        let direct = sd_oracle(&edge).unwrap();
        assert_eq!(direct, Poly::from_ints(&[1, 1]));
        assert_eq!(direct, sd_h(&edge.h_vector().unwrap()).unwrap());
        let tri_bd = SimplicialComplex::from_slices(&[&[1, 2], &[2, 3], &[1, 3]]).unwrap();
        let direct = sd_oracle(&tri_bd).unwrap();
        assert_eq!(direct, Poly::from_ints(&[1, 4, 1]));
        assert_eq!(direct, sd_h(&tri_bd.h_vector().unwrap()).unwrap());
        let tri = SimplicialComplex::from_slices(&[&[1, 2, 3]]).unwrap();
        assert_eq!(
            sd_oracle(&tri).unwrap(),
            sd_h(&tri.h_vector().unwrap()).unwrap()
        );
    }

    #[test]
    fn matroid_examples() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert_eq!(u12.h_vector().unwrap().h, vec![rat(1), rat(1)]);
        assert!(u12.is_coloop_free());
        let free1 = Matroid::uniform(1, 1).unwrap();
        assert_eq!(free1.h_vector().unwrap().h, vec![rat(1), rat(0)]);
        assert!(!free1.is_coloop_free());
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.h_vector().unwrap().h, vec![rat(1), rat(1), rat(1)]);
        assert!(u23.is_coloop_free());
    }

    #[test]
    fn matroid_validation() {
        assert!(Matroid::new(2, vec![]).is_err());
        let bad = Matroid::new(
            4,
            vec![[1usize, 2].into_iter().collect(), [3usize, 4].into_iter().collect()],
        );
        assert!(matches!(bad, Err(Error::InvalidMatroid(_))));
        let ok = Matroid::new(
            2,
            vec![[1usize].into_iter().collect(), [2usize].into_iter().collect()],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn graphic_matroids() {
        // triangle graph = U_{2,3}
        let tri = Matroid::graphic(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(tri.h_vector().unwrap(), u23.h_vector().unwrap());
        // path graph: both edges are coloops
        let path = Matroid::graphic(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(!path.is_coloop_free());
        assert_eq!(path.rank(), 2);
    }
}
