//! Assembly of the full invariant report: Euler obstructions by descending
//! recursion over the face lattice, Chern-Mather volumes, polar degrees, dual
//! degree and ED degree, plus the alternate index convention.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::face::{enumerate_faces, mask_to_indices, FaceKind, FaceLattice, IndexMask};
use crate::gale::GaleSystem;
use crate::invariants::{face_volume, mu_i_full, mu_i_pair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Main,
    Alternate,
}

impl Convention {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::Main => "main",
            Convention::Alternate => "alternate",
        }
    }
}

/// Per-face line of the report. For the full polytope `mu` and `index` are
/// absent (`mu(P, P)` is undefined).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub id: String,
    pub dim: usize,
    pub kind: FaceKind,
    pub points: Vec<usize>,
    pub complement: Vec<usize>,
    pub complement_mask: IndexMask,
    pub vol: BigInt,
    pub mu: Option<BigInt>,
    pub index: Option<BigInt>,
    pub eu: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: usize,
    pub faces: Vec<FaceRecord>,
    /// Chern-Mather volumes `V_0 .. V_{n-3}`.
    pub v: Vec<BigInt>,
    /// Polar degrees `delta_0 .. delta_{n-3}`.
    pub delta: Vec<BigInt>,
    pub degree: BigInt,
    pub dual_degree: BigInt,
    pub ed_degree: BigInt,
    pub convention: Convention,
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Euler obstructions over the whole lattice: `Eu(P) = 1` and the alternating
/// recursion over pairs, processed in strictly decreasing dimension.
pub fn euler_obstructions(
    lattice: &FaceLattice,
    sys: &GaleSystem,
) -> Result<HashMap<IndexMask, BigInt>> {
    let faces = lattice.faces();
    let entries: Vec<(IndexMask, usize)> = faces.iter().map(|f| (f.complement, f.dim)).collect();
    let weight = |ai: usize, bi: usize| -> Result<BigInt> {
        let (alpha, beta) = (&faces[ai], &faces[bi]);
        let (mu, idx) = if alpha.kind == FaceKind::FullPolytope {
            mu_i_full(beta, sys)?
        } else {
            mu_i_pair(alpha, beta, sys)?
        };
        Ok(mu * idx)
    };
    eu_recursion(&entries, weight)
}

/// Shared recursion core, generic over the pair weight `mu(alpha, beta) *
/// i(alpha, beta)` (given by face indices into `entries`). Each entry is a
/// `(complement mask, dimension)` pair; entries must be sorted by strictly
/// descending dimension blocks with the full polytope first. Containment is
/// read off the complements: `alpha` contains `beta` iff the complement of
/// `alpha` is a subset of the complement of `beta`.
pub(crate) fn eu_recursion<W>(
    entries: &[(IndexMask, usize)],
    weight: W,
) -> Result<HashMap<IndexMask, BigInt>>
where
    W: Fn(usize, usize) -> Result<BigInt> + Sync,
{
    let mut eu: HashMap<IndexMask, BigInt> = HashMap::new();
    eu.insert(entries[0].0, BigInt::one());
    let mut level_start = 1;
    while level_start < entries.len() {
        let d = entries[level_start].1;
        let level_end = entries[level_start..]
            .iter()
            .position(|e| e.1 != d)
            .map_or(entries.len(), |p| level_start + p);
        let level: Vec<(IndexMask, BigInt)> = (level_start..level_end)
            .into_par_iter()
            .map(|bi| -> Result<(IndexMask, BigInt)> {
                let (cb, db) = entries[bi];
                let mut total = BigInt::zero();
                for (ai, &(ca, da)) in entries.iter().enumerate() {
                    if da <= db || (ca & cb) != ca {
                        continue;
                    }
                    let term = weight(ai, bi)? * &eu[&ca];
                    if (da - db - 1) % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
                Ok((cb, total))
            })
            .collect::<Result<_>>()?;
        eu.extend(level);
        level_start = level_end;
    }
    Ok(eu)
}

/// `V_i = sum over dimension-i faces of Vol(beta) * Eu(beta)`.
pub fn chern_mather_volumes(
    lattice_dim: usize,
    vols_eus: &[(usize, BigInt, BigInt)],
) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); lattice_dim + 1];
    for (dim, vol, eu) in vols_eus {
        v[*dim] += vol * eu;
    }
    v
}

/// Polar degrees from the Chern-Mather volumes:
/// `delta_i = sum_{j=i+1}^{n-2} (-1)^{n-2-j} C(j, i+1) V_{j-1}`.
pub fn polar_degrees(v: &[BigInt], n: usize) -> Vec<BigInt> {
    assert_eq!(v.len(), n - 2);
    (0..=n - 3)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in i + 1..=n - 2 {
                let term = binomial(j, i + 1) * &v[j - 1];
                if (n - 2 - j) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect()
}

/// ED degree straight from the Chern-Mather volumes:
/// `sum_j (-1)^{n-3-j} (2^{j+1} - 1) V_j`.
pub fn ed_degree_from_volumes(v: &[BigInt], n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for (j, vj) in v.iter().enumerate() {
        let factor = (BigInt::one() << (j + 1)) - BigInt::one();
        let term = factor * vj;
        if (n - 3 - j) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// ED degree with the internal cross-check: the volume formula must agree
/// with the sum of the polar degrees.
pub fn ed_degree(v: &[BigInt], delta: &[BigInt], n: usize) -> Result<BigInt> {
    let from_v = ed_degree_from_volumes(v, n);
    let from_delta: BigInt = delta.iter().sum();
    if from_v != from_delta {
        return Err(Error::internal(format!(
            "ED degree mismatch: volume formula gives {from_v}, sum of polar degrees gives {from_delta}"
        )));
    }
    Ok(from_v)
}

/// First nonzero polar degree: the degree of the projective dual.
pub fn dual_degree(delta: &[BigInt]) -> Result<BigInt> {
    delta
        .iter()
        .find(|d| !d.is_zero())
        .cloned()
        .ok_or_else(|| Error::validation("all polar degrees are zero"))
}

/// Display labels: `P` for the polytope, `v{i}` for the vertex supported on
/// point `i`, `e{k}` for edges and `f{dim}_{k}` above, counted in face order.
pub(crate) fn face_label(
    dim: usize,
    dim_p: usize,
    points: &[usize],
    counter: &mut HashMap<usize, usize>,
) -> String {
    if dim == dim_p {
        return "P".to_string();
    }
    if dim == 0 {
        return format!("v{}", points[0] + 1);
    }
    let k = counter.entry(dim).or_insert(0);
    *k += 1;
    if dim == 1 {
        format!("e{k}")
    } else {
        format!("f{}_{}", dim, k)
    }
}

/// Run the whole B-matrix pipeline and assemble the report.
pub fn compute_report(sys: &GaleSystem) -> Result<InvariantReport> {
    let lattice = enumerate_faces(sys)?;
    compute_report_on_lattice(sys, &lattice)
}

pub fn compute_report_on_lattice(
    sys: &GaleSystem,
    lattice: &FaceLattice,
) -> Result<InvariantReport> {
    let n = sys.n();
    let eu = euler_obstructions(lattice, sys)?;
    let per_face: Vec<(BigInt, Option<BigInt>, Option<BigInt>)> = lattice
        .faces()
        .par_iter()
        .map(|f| -> Result<_> {
            let vol = face_volume(f, sys)?;
            if f.kind == FaceKind::FullPolytope {
                Ok((vol, None, None))
            } else {
                let (mu, idx) = mu_i_full(f, sys)?;
                Ok((vol, Some(mu), Some(idx)))
            }
        })
        .collect::<Result<_>>()?;

    let mut counter = HashMap::new();
    let dim_p = n - 3;
    let faces: Vec<FaceRecord> = lattice
        .faces()
        .iter()
        .zip(per_face)
        .map(|(f, (vol, mu, index))| FaceRecord {
            id: face_label(f.dim, dim_p, &mask_to_indices(f.points, n), &mut counter),
            dim: f.dim,
            kind: f.kind,
            points: mask_to_indices(f.points, n),
            complement: mask_to_indices(f.complement, n),
            complement_mask: f.complement,
            vol,
            mu,
            index,
            eu: eu[&f.complement].clone(),
        })
        .collect();

    finish_report(n, faces, Convention::Main)
}

pub(crate) fn finish_report(
    n: usize,
    faces: Vec<FaceRecord>,
    convention: Convention,
) -> Result<InvariantReport> {
    let dim_p = n - 3;
    let vols_eus: Vec<(usize, BigInt, BigInt)> = faces
        .iter()
        .map(|f| (f.dim, f.vol.clone(), f.eu.clone()))
        .collect();
    let v = chern_mather_volumes(dim_p, &vols_eus);
    let delta = polar_degrees(&v, n);
    for (i, d) in delta.iter().enumerate() {
        if d.is_negative() {
            return Err(Error::internal(format!(
                "negative polar degree delta_{i} = {d}"
            )));
        }
    }
    let ed = ed_degree(&v, &delta, n)?;
    if delta[dim_p] != v[dim_p] {
        return Err(Error::internal("delta_{n-3} != V_{n-3}"));
    }
    let degree = v[dim_p].clone();
    let dual = dual_degree(&delta)?;
    Ok(InvariantReport {
        n,
        faces,
        v,
        delta,
        degree,
        dual_degree: dual,
        ed_degree: ed,
        convention,
    })
}

/// Re-express the per-face data in the alternate index convention:
/// `Eu' = Eu / i(A, beta)`, `Vol' = Vol * i(A, beta)`, with `i(A, P) = 1`.
/// Requires a saturated `A`; the global invariants are unchanged.
pub fn convert_convention(report: &InvariantReport, sys: &GaleSystem) -> Result<InvariantReport> {
    if !sys.index_za().is_one() {
        return Err(Error::validation(format!(
            "alternate convention requires saturated A: [Z^(n-2) : Z A] = {}",
            sys.index_za()
        )));
    }
    let faces: Vec<FaceRecord> = report
        .faces
        .iter()
        .map(|f| -> Result<FaceRecord> {
            let i_a = f.index.clone().unwrap_or_else(BigInt::one);
            if i_a.is_zero() || !(&f.eu % &i_a).is_zero() {
                return Err(Error::internal(format!(
                    "Eu({}) = {} not divisible by i(A, beta) = {i_a}",
                    f.id, f.eu
                )));
            }
            Ok(FaceRecord {
                eu: &f.eu / &i_a,
                vol: &f.vol * &i_a,
                ..f.clone()
            })
        })
        .collect::<Result<_>>()?;
    let converted = finish_report(report.n, faces, Convention::Alternate)?;
    if converted.v != report.v || converted.delta != report.delta || converted.ed_degree != report.ed_degree
    {
        return Err(Error::internal(
            "alternate convention changed the global invariants",
        ));
    }
    Ok(converted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::indices_to_mask;
    use crate::gale::a_from_gale_dual;
    use crate::matrix::IntegerMatrix;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows_i64(rows)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn bigs(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn running() -> GaleSystem {
        a_from_gale_dual(m(&[
            vec![1, 0],
            vec![0, 1],
            vec![2, 2],
            vec![-4, 0],
            vec![1, -3],
        ]))
        .unwrap()
    }

    #[test]
    fn euler_obstructions_running_example() {
        let sys = running();
        let lattice = enumerate_faces(&sys).unwrap();
        let eu = euler_obstructions(&lattice, &sys).unwrap();
        let get = |idxs: &[usize]| eu[&indices_to_mask(idxs)].clone();
        assert_eq!(eu[&0], big(1)); // Eu(P) = 1
        assert_eq!(get(&[0, 3]), big(1)); // e1
        assert_eq!(get(&[1, 3, 4]), big(1)); // e2
        assert_eq!(get(&[2, 3, 4]), big(8)); // e3
        assert_eq!(get(&[1, 2, 3, 4]), big(0)); // v1
        assert_eq!(get(&[0, 2, 3, 4]), big(2)); // v2
        assert_eq!(get(&[0, 1, 3, 4]), big(0)); // v3
    }

    #[test]
    fn smooth_case_has_all_ones() {
        // square: B rows (1,0),(0,1),(-1,0),(0,-1); all pair weights are 1
        let sys = a_from_gale_dual(m(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]))
            .unwrap();
        let lattice = enumerate_faces(&sys).unwrap();
        let eu = euler_obstructions(&lattice, &sys).unwrap();
        for f in lattice.faces() {
            assert_eq!(eu[&f.complement], big(1), "face {:?}", f.complement);
        }
    }

    #[test]
    fn chern_mather_and_polar_running_example() {
        let sys = running();
        let report = compute_report(&sys).unwrap();
        assert_eq!(report.v, bigs(&[2, 12, 12]));
        assert_eq!(report.delta, bigs(&[14, 24, 12]));
        assert_eq!(report.ed_degree, big(50));
        assert_eq!(report.degree, big(12));
        assert_eq!(report.dual_degree, big(14));
    }

    #[test]
    fn twisted_cubic_report() {
        let sys = crate::gale::gale_dual_from_a(m(&[vec![3, 2, 1, 0], vec![1, 1, 1, 1]]))
            .unwrap();
        let report = compute_report(&sys).unwrap();
        assert_eq!(report.v, bigs(&[2, 3]));
        assert_eq!(report.delta, bigs(&[4, 3]));
        assert_eq!(report.ed_degree, big(7));
        assert_eq!(report.dual_degree, big(4));
    }

    #[test]
    fn polar_degrees_single_volume() {
        // V = (0, ..., 0, d): delta_i = C(n-2, i+1) * d with alternating-free
        // single-term sums; the last entry is d itself.
        let n = 6;
        let mut v = vec![BigInt::zero(); n - 2];
        v[n - 3] = big(5);
        let delta = polar_degrees(&v, n);
        assert_eq!(delta[n - 3], big(5));
        for (i, d) in delta.iter().enumerate() {
            assert_eq!(*d, binomial(n - 2, i + 1) * big(5));
        }
    }

    #[test]
    fn convention_conversion_running_example() {
        let sys = running();
        let report = compute_report(&sys).unwrap();
        let alt = convert_convention(&report, &sys).unwrap();
        assert_eq!(alt.v, report.v);
        assert_eq!(alt.delta, report.delta);
        assert_eq!(alt.ed_degree, report.ed_degree);
        let e3 = alt
            .faces
            .iter()
            .find(|f| f.complement == vec![2, 3, 4])
            .unwrap();
        assert_eq!(e3.eu, big(2));
        assert_eq!(e3.vol, big(4));
        let e1 = alt
            .faces
            .iter()
            .find(|f| f.complement == vec![0, 3])
            .unwrap();
        assert_eq!(e1.eu, big(1));
        assert_eq!(e1.vol, big(3));
    }

    #[test]
    fn vertex_labels_follow_point_indices() {
        let sys = running();
        let report = compute_report(&sys).unwrap();
        let v1 = report.faces.iter().find(|f| f.id == "v1").unwrap();
        assert_eq!(v1.complement, vec![1, 2, 3, 4]);
        assert_eq!(v1.vol, big(1));
        assert_eq!(v1.mu, Some(big(9)));
        assert_eq!(v1.eu, big(0));
    }
}
