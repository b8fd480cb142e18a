//! Independent pipeline working directly with the matrix `A`: convex hulls
//! and Hermite normal forms in `Z^(n-2)` instead of closed formulas in `Z^2`.
//! Everything here is deliberately brute force; it exists to cross-validate
//! the Gale dual pipeline and to serve as a benchmark baseline.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::characteristic::{
    eu_recursion, face_label, finish_report, Convention, FaceRecord, InvariantReport,
};
use crate::error::{Error, Result};
use crate::face::{indices_to_mask, IndexMask};
use crate::matrix::{column_hnf, determinant, gcd_of_minors, kernel_basis_any, row_hnf, IntegerMatrix};

/// Largest ambient dimension `n - 2` the brute-force hull code will accept.
pub const MAX_ORACLE_DIM: usize = 7;

type Point = Vec<BigInt>;

fn columns(a: &IntegerMatrix) -> Vec<Point> {
    (0..a.cols()).map(|c| a.column(c)).collect()
}

fn matrix_from_columns(cols: &[Point]) -> IntegerMatrix {
    let rows = cols.first().map_or(0, |c| c.len());
    let mut m = IntegerMatrix::zero(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

/// Solve `basis * x = p` for an echelon basis (column HNF, nonzero columns)
/// by forward substitution with exact divisions. Fails if `p` is not in the
/// lattice spanned by the basis columns.
fn solve_in_basis(basis: &IntegerMatrix, pivots: &[usize], p: &[Point]) -> Result<Vec<Point>> {
    let r = basis.cols();
    let mut out = Vec::with_capacity(p.len());
    for point in p {
        let mut x = Vec::with_capacity(r);
        for j in 0..r {
            let row = pivots[j];
            let mut v = point[row].clone();
            for (k, xk) in x.iter().enumerate().take(j) {
                v -= basis.get(row, k) * xk;
            }
            let piv = basis.get(row, j);
            if !(&v % piv).is_zero() {
                return Err(Error::internal("point is not in the expected lattice"));
            }
            x.push(v / piv);
        }
        for i in 0..basis.rows() {
            let check: BigInt = (0..r).map(|j| basis.get(i, j) * &x[j]).sum();
            if check != point[i] {
                return Err(Error::internal("point is not in the expected lattice"));
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// Map points to coordinates in the lattice spanned by their differences.
/// The result is a point set that affinely spans `Z^r` with `r` the affine
/// rank; the first point need not map to the origin of the hull but the
/// point at index 0 always maps to zero.
fn affine_coordinates(points: &[Point]) -> Result<Vec<Point>> {
    let diffs: Vec<Point> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let d = matrix_from_columns(&diffs);
    let hnf = column_hnf(&d);
    let r = hnf.rank;
    let basis = hnf.h.submatrix(
        &(0..d.rows()).collect::<Vec<_>>(),
        &(0..r).collect::<Vec<_>>(),
    );
    let mut all = vec![vec![BigInt::zero(); points[0].len()]];
    all.extend(diffs);
    solve_in_basis(&basis, &hnf.pivots, &all)
}

fn affine_rank(points: &[Point]) -> usize {
    let diffs: Vec<Point> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    crate::matrix::rank(&matrix_from_columns(&diffs))
}

/// Facets of the hull of a full-dimensional point set in `Z^r`, as sorted
/// lists of indices of all input points lying on the facet.
fn hull_facets(points: &[Point]) -> Vec<Vec<usize>> {
    let r = points[0].len();
    let m = points.len();
    if r == 1 {
        let min = points.iter().map(|p| &p[0]).min().unwrap().clone();
        let max = points.iter().map(|p| &p[0]).max().unwrap().clone();
        let lo: Vec<usize> = (0..m).filter(|&i| points[i][0] == min).collect();
        let hi: Vec<usize> = (0..m).filter(|&i| points[i][0] == max).collect();
        return vec![lo, hi];
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for subset in (0..m).combinations(r) {
        let diffs: Vec<Point> = subset[1..]
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .zip(&points[subset[0]])
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        // normal direction: kernel of the (r-1) x r matrix with the
        // differences as rows; one-dimensional iff the subset spans a
        // hyperplane
        let dm = matrix_from_columns(&diffs).transpose();
        let ker = kernel_basis_any(&dm);
        if ker.cols() != 1 {
            continue;
        }
        let w = ker.column(0);
        let c: BigInt = w.iter().zip(&points[subset[0]]).map(|(a, b)| a * b).sum();
        let vals: Vec<BigInt> = points
            .iter()
            .map(|p| w.iter().zip(p).map(|(a, b)| a * b).sum::<BigInt>() - &c)
            .collect();
        if vals.iter().any(|v| v.is_positive()) && vals.iter().any(|v| v.is_negative()) {
            continue;
        }
        let facet: Vec<usize> = (0..m).filter(|&i| vals[i].is_zero()).collect();
        seen.insert(facet);
    }
    seen.into_iter().collect()
}

/// Triangulate the hull of a full-dimensional point set in `Z^r` by coning
/// a vertex over triangulations of the facets it does not lie on. Returns
/// simplices as lists of point indices.
fn triangulate(points: &[Point]) -> Result<Vec<Vec<usize>>> {
    let r = points[0].len();
    if r == 0 {
        return Ok(vec![vec![0]]);
    }
    if points.len() == r + 1 {
        return Ok(vec![(0..=r).collect()]);
    }
    let v0 = (0..points.len()).min_by_key(|&i| &points[i]).unwrap();
    let mut out = Vec::new();
    for facet in hull_facets(points) {
        if facet.contains(&v0) {
            continue;
        }
        let facet_points: Vec<Point> = facet.iter().map(|&i| points[i].clone()).collect();
        let coords = affine_coordinates(&facet_points)?;
        if coords[0].len() != r - 1 {
            return Err(Error::internal("facet has unexpected affine rank"));
        }
        for sub in triangulate(&coords)? {
            let mut simplex = vec![v0];
            simplex.extend(sub.into_iter().map(|k| facet[k]));
            out.push(simplex);
        }
    }
    Ok(out)
}

fn volume_full_dim(points: &[Point]) -> Result<BigInt> {
    let r = points[0].len();
    let mut total = BigInt::zero();
    for simplex in triangulate(points)? {
        let edges: Vec<Point> = simplex[1..]
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .zip(&points[simplex[0]])
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        debug_assert_eq!(edges.len(), r);
        total += determinant(&matrix_from_columns(&edges)).abs();
    }
    Ok(total)
}

/// Normalized volume of the hull of a point set, with respect to the lattice
/// spanned by the differences of the points.
pub fn normalized_volume(points: &[Point]) -> Result<BigInt> {
    volume_full_dim(&affine_coordinates(points)?)
}

/// Volume of the cone over a face: the points of the face together with the
/// origin, normalized with respect to the lattice they span.
pub fn cone_volume(points: &[Point]) -> Result<BigInt> {
    let mut all = points.to_vec();
    all.push(vec![BigInt::zero(); points[0].len()]);
    normalized_volume(&all)
}

/// All nonempty faces of the hull of the columns of `A`, as sorted lists of
/// point indices together with their dimension. Includes the hull itself.
pub fn polytope_faces(a: &IntegerMatrix) -> Result<Vec<(Vec<usize>, usize)>> {
    let points = columns(a);
    let coords = affine_coordinates(&points)?;
    let r = coords[0].len();
    let full: Vec<usize> = (0..points.len()).collect();
    if r == 0 {
        return Err(Error::validation("polytope is a single point"));
    }
    let facets = hull_facets(&coords);
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    faces.insert(full.clone());
    let mut queue = vec![full];
    while let Some(f) = queue.pop() {
        for g in &facets {
            let inter: Vec<usize> = f.iter().copied().filter(|i| g.contains(i)).collect();
            if !inter.is_empty() && faces.insert(inter.clone()) {
                queue.push(inter);
            }
        }
    }
    Ok(faces
        .into_iter()
        .map(|f| {
            let pts: Vec<Point> = f.iter().map(|&i| coords[i].clone()).collect();
            let dim = affine_rank(&pts);
            (f, dim)
        })
        .collect())
}

/// Subdiagram volume `mu(alpha, beta)` from the row Hermite normal form of
/// `A` with its columns reordered as (beta, alpha minus beta, rest), together
/// with the extracted block `C`. Both hull volumes are normalized with
/// respect to the lattice spanned by the columns of `C`, the image of
/// `Z alpha` in the quotient.
pub fn subdiagram_volume_a(
    a: &IntegerMatrix,
    alpha: &[usize],
    beta: &[usize],
) -> Result<(BigInt, IntegerMatrix)> {
    let n = a.cols();
    let nb = beta.len();
    let na = alpha.len();
    let mut order: Vec<usize> = beta.to_vec();
    order.extend(alpha.iter().copied().filter(|i| !beta.contains(i)));
    order.extend((0..n).filter(|i| !alpha.contains(i)));
    let sub = a.submatrix(&(0..a.rows()).collect::<Vec<_>>(), &order);
    let hnf = row_hnf(&sub);
    let c_rows: Vec<usize> = hnf
        .pivots
        .iter()
        .enumerate()
        .filter(|(_, &col)| col >= nb && col < na)
        .map(|(i, _)| i)
        .collect();
    let r = c_rows.len();
    if r == 0 {
        return Err(Error::internal("alpha and beta span the same sublattice"));
    }
    let c = hnf.h.submatrix(&c_rows, &(nb..na).collect::<Vec<_>>());
    let ch = column_hnf(&c);
    if ch.rank != r {
        return Err(Error::internal("quotient block has unexpected rank"));
    }
    let basis = ch.h.submatrix(
        &(0..r).collect::<Vec<_>>(),
        &(0..r).collect::<Vec<_>>(),
    );
    let cols = columns(&c);
    let pts = solve_in_basis(&basis, &ch.pivots, &cols)?;
    let mut with_zero = pts.clone();
    with_zero.push(vec![BigInt::zero(); r]);
    let vol1 = volume_full_dim(&with_zero)?;
    let vol0 = if affine_rank(&pts) < r {
        BigInt::zero()
    } else {
        volume_full_dim(&pts)?
    };
    let mu = vol1 - vol0;
    if mu.is_negative() {
        return Err(Error::internal("negative subdiagram volume"));
    }
    Ok((mu, c))
}

/// Lattice index `i(alpha, beta) = [Z alpha \cap R beta : Z beta]`, computed
/// as the covolume of `Z beta` inside its saturation in `Z alpha`: the gcd of
/// the maximal minors of the matrix expressing the points of `beta` in a
/// basis of `Z alpha`.
pub fn lattice_index_a(a: &IntegerMatrix, alpha: &[usize], beta: &[usize]) -> Result<BigInt> {
    let points = columns(a);
    let alpha_cols: Vec<Point> = alpha.iter().map(|&i| points[i].clone()).collect();
    let beta_cols: Vec<Point> = beta.iter().map(|&i| points[i].clone()).collect();
    let am = matrix_from_columns(&alpha_cols);
    let hnf = column_hnf(&am);
    let basis = am_basis(&hnf.h, am.rows(), hnf.rank);
    let rel = matrix_from_columns(&solve_in_basis(&basis, &hnf.pivots, &beta_cols)?);
    let s = crate::matrix::rank(&rel);
    Ok(gcd_of_minors(&rel, s))
}

fn am_basis(h: &IntegerMatrix, rows: usize, rank: usize) -> IntegerMatrix {
    h.submatrix(
        &(0..rows).collect::<Vec<_>>(),
        &(0..rank).collect::<Vec<_>>(),
    )
}

/// Full invariant report computed only from `A`: brute-force face lattice,
/// Hermite normal form subdiagram volumes and hull volumes.
pub fn full_pipeline_a(a: &IntegerMatrix) -> Result<InvariantReport> {
    let n = a.cols();
    let d = a.rows();
    if d + 2 != n {
        return Err(Error::validation("not codimension two"));
    }
    if d > MAX_ORACLE_DIM {
        return Err(Error::Unsupported(format!(
            "the A-matrix method is limited to n - 2 <= {MAX_ORACLE_DIM}, got {d}"
        )));
    }
    let points = columns(a);
    let mut faces = polytope_faces(a)?;
    let dim_p = n - 3;
    if faces.iter().map(|(_, dim)| *dim).max() != Some(dim_p) {
        return Err(Error::internal("polytope has unexpected dimension"));
    }
    // same ordering as the Gale dual pipeline: dimension descending, then
    // complements lexicographically
    let complement = |f: &[usize]| -> Vec<usize> {
        (0..n).filter(|i| !f.contains(i)).collect()
    };
    faces.sort_by(|x, y| y.1.cmp(&x.1).then_with(|| complement(&x.0).cmp(&complement(&y.0))));

    let entries: Vec<(IndexMask, usize)> = faces
        .iter()
        .map(|(f, dim)| (indices_to_mask(&complement(f)), *dim))
        .collect();
    let weight = |ai: usize, bi: usize| -> Result<BigInt> {
        let (mu, _) = subdiagram_volume_a(a, &faces[ai].0, &faces[bi].0)?;
        let idx = lattice_index_a(a, &faces[ai].0, &faces[bi].0)?;
        Ok(mu * idx)
    };
    let eu = eu_recursion(&entries, weight)?;

    let all: Vec<usize> = (0..n).collect();
    let mut counter = HashMap::new();
    let mut records = Vec::with_capacity(faces.len());
    for ((f, dim), (mask, _)) in faces.iter().zip(&entries) {
        let pts: Vec<Point> = f.iter().map(|&i| points[i].clone()).collect();
        let vol = cone_volume(&pts)?;
        let (mu, index) = if *dim == dim_p {
            (None, None)
        } else {
            (
                Some(subdiagram_volume_a(a, &all, f)?.0),
                Some(lattice_index_a(a, &all, f)?),
            )
        };
        // the classification used by the Gale dual pipeline is determined by
        // the dimension and the complement size alone
        let s = n - f.len();
        let kind = if s == 0 {
            crate::face::FaceKind::FullPolytope
        } else if *dim + 1 == n - s {
            crate::face::FaceKind::Simplex
        } else if *dim + 2 == n - s {
            crate::face::FaceKind::RelevantLineFace
        } else {
            return Err(Error::internal("face dimension inconsistent with its complement"));
        };
        records.push(FaceRecord {
            id: face_label(*dim, dim_p, f, &mut counter),
            dim: *dim,
            kind,
            points: f.clone(),
            complement: complement(f),
            complement_mask: *mask,
            vol,
            mu,
            index,
            eu: eu[mask].clone(),
        });
    }
    finish_report(n, records, Convention::Main)
}

/// One benchmark record per (fixture, method). The "faces" method times the
/// Gale dual face enumeration alone and is listed separately; the "B-matrix"
/// method times the invariant computation on a precomputed face lattice; the
/// "A-matrix" method times this module's full pipeline, including its own
/// hull-based face enumeration. Parsing is excluded. Result hashes let the
/// timing run double as a correctness check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BenchRecord {
    pub fixture: String,
    pub n: usize,
    pub method: String,
    pub seconds: f64,
    pub result_hash: String,
}

fn time_avg<T>(reps: usize, mut f: impl FnMut() -> Result<T>) -> Result<(f64, T)> {
    let start = std::time::Instant::now();
    let mut last = f()?;
    for _ in 1..reps {
        last = f()?;
    }
    Ok((start.elapsed().as_secs_f64() / reps as f64, last))
}

pub fn benchmark(fixture_names: &[String], reps: usize) -> Result<Vec<BenchRecord>> {
    use sha2::Digest;
    let reps = reps.max(1);
    let mut records = Vec::new();
    for name in fixture_names {
        let a = crate::fixtures::fixture_matrix(name)?;
        let n = a.cols();
        let sys = crate::gale::gale_dual_from_a(a.clone())?;

        let (face_secs, lattice) = time_avg(reps, || crate::face::enumerate_faces(&sys))?;
        let face_list: Vec<Vec<usize>> = lattice
            .faces()
            .iter()
            .map(|f| crate::face::mask_to_indices(f.points, n))
            .collect();
        let face_hash = hex::encode(sha2::Sha256::digest(
            serde_json::to_string(&face_list).expect("face list serialization"),
        ));
        records.push(BenchRecord {
            fixture: name.clone(),
            n,
            method: "faces".to_string(),
            seconds: face_secs,
            result_hash: face_hash,
        });

        let (b_secs, b_report) = time_avg(reps, || {
            crate::characteristic::compute_report_on_lattice(&sys, &lattice)
        })?;
        records.push(BenchRecord {
            fixture: name.clone(),
            n,
            method: "B-matrix".to_string(),
            seconds: b_secs,
            result_hash: crate::report::digest(&b_report),
        });

        if a.rows() <= MAX_ORACLE_DIM {
            let (a_secs, a_report) = time_avg(reps, || full_pipeline_a(&a))?;
            records.push(BenchRecord {
                fixture: name.clone(),
                n,
                method: "A-matrix".to_string(),
                seconds: a_secs,
                result_hash: crate::report::digest(&a_report),
            });
        }
    }
    Ok(records)
}
