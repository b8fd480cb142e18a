//! Face enumeration for `P = Conv(A)` driven entirely by the two-column Gale
//! dual: an index set `S` is the complement of a face exactly when the rows
//! `b_i`, `i in S`, admit a strictly positive rational combination summing to
//! zero. In the plane that means: `S` is empty, or the rows are collinear
//! through the origin with both directions present, or they positively span
//! `R^2`.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gale::GaleSystem;
use crate::matrix::{gcd_iter, IntegerMatrix};

/// Bitmask over row/column indices `0..n`.
pub type IndexMask = u64;

pub fn mask_to_indices(mask: IndexMask, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn indices_to_mask(idxs: &[usize]) -> IndexMask {
    idxs.iter().fold(0, |m, &i| m | (1 << i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    FullPolytope,
    Simplex,
    RelevantLineFace,
}

/// A relevant line: a line through the origin holding rows of `B` in both
/// directions. `v` is primitive with positive first nonzero coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantLineData {
    pub v: (BigInt, BigInt),
    /// `i -> lambda_i` with `b_i = lambda_i * v`.
    pub lambdas: BTreeMap<usize, BigInt>,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Lattice points of the face (column indices of `A`).
    pub points: IndexMask,
    /// Complement index set: the rows of `B_beta`.
    pub complement: IndexMask,
    pub dim: usize,
    pub kind: FaceKind,
    /// Present iff `kind == RelevantLineFace`; lambdas range over `complement`.
    pub line: Option<RelevantLineData>,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    n: usize,
    /// Sorted by descending dimension, then by complement index list.
    faces: Vec<Face>,
    by_complement: HashMap<IndexMask, usize>,
}

/// Split a nonzero integer vector into a primitive direction and a scalar.
/// The direction has positive first nonzero coordinate, so `b = lambda * v`.
pub fn primitive_direction(x: &BigInt, y: &BigInt) -> ((BigInt, BigInt), BigInt) {
    assert!(!(x.is_zero() && y.is_zero()));
    use num::integer::Integer;
    let g = x.abs().gcd(&y.abs());
    let mut v = (x / &g, y / &g);
    let mut lambda = g;
    let lead_negative = if !v.0.is_zero() {
        v.0.is_negative()
    } else {
        v.1.is_negative()
    };
    if lead_negative {
        v = (-v.0, -v.1);
        lambda = -lambda;
    }
    (v, lambda)
}

fn cross(a: (&BigInt, &BigInt), b: (&BigInt, &BigInt)) -> BigInt {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: (&BigInt, &BigInt), b: (&BigInt, &BigInt)) -> BigInt {
    a.0 * b.0 + a.1 * b.1
}

/// Do the given nonzero plane vectors positively span `R^2`?
/// Equivalent: no closed half-plane through the origin contains them all.
/// It suffices to test half-planes whose boundary passes through one of the
/// vectors.
fn positively_spans(rows: &[(BigInt, BigInt)]) -> bool {
    for r in rows {
        for u in [(-r.1.clone(), r.0.clone()), (r.1.clone(), -r.0.clone())] {
            if rows.iter().all(|b| !dot((&u.0, &u.1), (&b.0, &b.1)).is_negative()) {
                return false;
            }
        }
    }
    true
}

/// Outcome of the positive-combination test for one index set.
enum ComplementClass {
    NotAFace,
    Full,
    Line(RelevantLineData),
    Spanning,
}

fn classify_complement(sys: &GaleSystem, mask: IndexMask) -> ComplementClass {
    let n = sys.n();
    let idxs = mask_to_indices(mask, n);
    if idxs.is_empty() {
        return ComplementClass::Full;
    }
    let rows: Vec<(BigInt, BigInt)> = idxs
        .iter()
        .map(|&i| {
            let (x, y) = sys.b_row(i);
            (x.clone(), y.clone())
        })
        .collect();
    let collinear = rows[1..]
        .iter()
        .all(|r| cross((&rows[0].0, &rows[0].1), (&r.0, &r.1)).is_zero());
    if collinear {
        let (v, _) = primitive_direction(&rows[0].0, &rows[0].1);
        let mut lambdas = BTreeMap::new();
        let mut pos = false;
        let mut neg = false;
        for (&i, r) in idxs.iter().zip(&rows) {
            let (vi, lambda) = primitive_direction(&r.0, &r.1);
            debug_assert_eq!(vi, v);
            pos |= lambda.is_positive();
            neg |= lambda.is_negative();
            lambdas.insert(i, lambda);
        }
        if pos && neg {
            ComplementClass::Line(RelevantLineData { v, lambdas })
        } else {
            ComplementClass::NotAFace
        }
    } else if positively_spans(&rows) {
        ComplementClass::Spanning
    } else {
        ComplementClass::NotAFace
    }
}

/// Does a strictly positive combination of the rows `b_i`, `i in S`, sum to
/// zero? (Vacuously true for the empty set.)
pub fn is_face_complement(sys: &GaleSystem, mask: IndexMask) -> bool {
    !matches!(classify_complement(sys, mask), ComplementClass::NotAFace)
}

/// All maximal sets of collinear rows of `B` with both directions present.
pub fn classify_relevant_lines(b: &IntegerMatrix) -> Vec<RelevantLineData> {
    let mut by_dir: BTreeMap<(BigInt, BigInt), BTreeMap<usize, BigInt>> = BTreeMap::new();
    for i in 0..b.rows() {
        let (v, lambda) = primitive_direction(b.get(i, 0), b.get(i, 1));
        by_dir.entry(v).or_default().insert(i, lambda);
    }
    by_dir
        .into_iter()
        .filter(|(_, lambdas)| {
            lambdas.values().any(|l| l.is_positive()) && lambdas.values().any(|l| l.is_negative())
        })
        .map(|(v, lambdas)| RelevantLineData { v, lambdas })
        .collect()
}

/// Is `beta` a (weak) face of `alpha`? True iff `B_alpha ⊆ B_beta`.
pub fn contains(alpha: &Face, beta: &Face) -> bool {
    alpha.complement & beta.complement == alpha.complement
}

impl FaceLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_by_complement(&self, mask: IndexMask) -> Option<&Face> {
        self.by_complement.get(&mask).map(|&i| &self.faces[i])
    }

    pub fn full_polytope(&self) -> &Face {
        &self.faces[0]
    }

    /// Dimension of `P` itself.
    pub fn dim(&self) -> usize {
        self.faces[0].dim
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == d)
    }

    pub fn proper_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().skip(1)
    }
}

/// Enumerate every face of `Conv(A)` from the Gale dual, with kind and
/// dimension. Exhaustive over the `2^n` candidate complements.
pub fn enumerate_faces(sys: &GaleSystem) -> Result<FaceLattice> {
    let n = sys.n();
    if n >= 26 {
        return Err(Error::Unsupported(format!(
            "face enumeration over 2^{n} subsets exceeds the desk-scale guard"
        )));
    }
    let mut faces = Vec::new();
    // The full mask would be the empty face; skip it.
    for mask in 0..(1u64 << n) - 1 {
        let class = classify_complement(sys, mask);
        let size = mask.count_ones() as usize;
        let face = match class {
            ComplementClass::NotAFace => continue,
            ComplementClass::Full => Face {
                points: (1 << n) - 1,
                complement: 0,
                dim: n - 3,
                kind: FaceKind::FullPolytope,
                line: None,
            },
            ComplementClass::Line(line) => {
                let dim = (n as i64) - (size as i64) - 2;
                if dim < 0 {
                    return Err(Error::internal(
                        "relevant-line complement with negative face dimension",
                    ));
                }
                Face {
                    points: ((1 << n) - 1) & !mask,
                    complement: mask,
                    dim: dim as usize,
                    kind: FaceKind::RelevantLineFace,
                    line: Some(line),
                }
            }
            ComplementClass::Spanning => Face {
                points: ((1 << n) - 1) & !mask,
                complement: mask,
                dim: n - size - 1,
                kind: FaceKind::Simplex,
                line: None,
            },
        };
        if face.kind == FaceKind::Simplex {
            debug_assert_eq!(face.points.count_ones() as usize, face.dim + 1);
        }
        faces.push(face);
    }
    faces.sort_by(|a, b| {
        b.dim
            .cmp(&a.dim)
            .then_with(|| mask_to_indices(a.complement, n).cmp(&mask_to_indices(b.complement, n)))
    });
    let by_complement = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.complement, i))
        .collect();
    let lattice = FaceLattice {
        n,
        faces,
        by_complement,
    };
    sanity_check(&lattice)?;
    Ok(lattice)
}

fn sanity_check(lattice: &FaceLattice) -> Result<()> {
    let full_count = lattice
        .faces
        .iter()
        .filter(|f| f.kind == FaceKind::FullPolytope)
        .count();
    if full_count != 1 {
        return Err(Error::internal("expected exactly one full-polytope face"));
    }
    for f in lattice.proper_faces() {
        if let Some(line) = &f.line {
            let pos = line.lambdas.values().any(|l| l.is_positive());
            let neg = line.lambdas.values().any(|l| l.is_negative());
            if !(pos && neg) {
                return Err(Error::internal("relevant-line face missing a direction"));
            }
            let g = gcd_iter(line.lambdas.values());
            if g.is_zero() {
                return Err(Error::internal("relevant-line face with zero lambdas"));
            }
        }
    }
    // boundary-sphere Euler characteristic
    let dim_p = lattice.dim() as i64;
    let mut chi = 0i64;
    for f in lattice.proper_faces() {
        chi += if f.dim % 2 == 0 { 1 } else { -1 };
    }
    let expected = 1 - if dim_p % 2 == 0 { 1 } else { -1 };
    if chi != expected {
        return Err(Error::internal(format!(
            "Euler characteristic {chi} of the boundary, expected {expected}"
        )));
    }
    Ok(())
}
