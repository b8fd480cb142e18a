//! Closed-form subdiagram volumes, lattice indices and face volumes computed
//! from the Gale dual matrix alone.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::face::{contains, mask_to_indices, Face, FaceKind, RelevantLineData};
use crate::gale::GaleSystem;
use crate::matrix::{gcd_iter, IntegerMatrix};

fn det2(v: (&BigInt, &BigInt), b: (&BigInt, &BigInt)) -> BigInt {
    v.0 * b.1 - v.1 * b.0
}

/// Degree of the homogeneous lattice ideal of an integer vector with zero sum:
/// the sum of its positive entries.
pub fn lattice_ideal_degree_codim1(b: &[BigInt]) -> Result<BigInt> {
    let total: BigInt = b.iter().sum();
    if !total.is_zero() {
        return Err(Error::validation("not homogeneous: entries do not sum to zero"));
    }
    if b.iter().all(|x| x.is_zero()) {
        return Err(Error::validation("zero vector has no lattice ideal degree"));
    }
    Ok(b.iter().filter(|x| x.is_positive()).sum())
}

/// Degree of the homogeneous lattice ideal of an `m x 2` integer matrix with
/// zero column sums: `beta_1 * beta_2 - sum nu_ij`, where `nu_ij` ranges over
/// unordered row pairs lying in the interiors of opposite quadrants.
///
/// At most one zero row is tolerated (an appended `w = 0` row) and dropped.
pub fn lattice_ideal_degree_codim2(b: &IntegerMatrix) -> Result<BigInt> {
    if b.cols() != 2 {
        return Err(Error::validation("expected a 2-column matrix"));
    }
    for c in 0..2 {
        let s: BigInt = (0..b.rows()).map(|r| b.get(r, c)).sum();
        if !s.is_zero() {
            return Err(Error::validation(format!(
                "not homogeneous: column {} sums to {s}",
                c + 1
            )));
        }
    }
    let rows: Vec<(BigInt, BigInt)> = (0..b.rows())
        .map(|r| (b.get(r, 0).clone(), b.get(r, 1).clone()))
        .filter(|(x, y)| !(x.is_zero() && y.is_zero()))
        .collect();
    if b.rows() - rows.len() > 1 {
        return Err(Error::validation("more than one zero row"));
    }
    let beta1: BigInt = rows.iter().map(|r| &r.0).filter(|x| x.is_positive()).sum();
    let beta2: BigInt = rows.iter().map(|r| &r.1).filter(|x| x.is_positive()).sum();
    let mut nu_total = BigInt::zero();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (bi, bj) = (&rows[i], &rows[j]);
            let interior = !bi.0.is_zero() && !bi.1.is_zero() && !bj.0.is_zero() && !bj.1.is_zero();
            let opposite = (bi.0.is_positive() != bj.0.is_positive())
                && (bi.1.is_positive() != bj.1.is_positive());
            if interior && opposite {
                let p = (&bi.0 * &bj.1).abs();
                let q = (&bi.1 * &bj.0).abs();
                nu_total += p.min(q);
            }
        }
    }
    Ok(beta1 * beta2 - nu_total)
}

fn signed_sums<'a>(values: impl Iterator<Item = &'a BigInt>) -> (BigInt, BigInt) {
    let mut pos = BigInt::zero();
    let mut neg = BigInt::zero();
    for v in values {
        if v.is_positive() {
            pos += v;
        } else if v.is_negative() {
            neg -= v;
        }
    }
    (pos, neg)
}

fn exact_div(num: BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    if den.is_zero() || !(&num % den).is_zero() {
        return Err(Error::internal(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    Ok(num / den)
}

/// `(mu(P, beta), i(P, beta))` for a proper face `beta`.
pub fn mu_i_full(beta: &Face, sys: &GaleSystem) -> Result<(BigInt, BigInt)> {
    match beta.kind {
        FaceKind::FullPolytope => Err(Error::validation("mu(P, P) is undefined")),
        FaceKind::RelevantLineFace => {
            let line = beta
                .line
                .as_ref()
                .ok_or_else(|| Error::internal("relevant-line face without line data"))?;
            mu_i_on_line(line)
        }
        FaceKind::Simplex => {
            let idxs = mask_to_indices(beta.complement, sys.n());
            let mut wx = BigInt::zero();
            let mut wy = BigInt::zero();
            for &i in &idxs {
                let (x, y) = sys.b_row(i);
                wx -= x;
                wy -= y;
            }
            let torsion = gcd_iter(
                idxs.iter()
                    .flat_map(|&i| idxs.iter().map(move |&j| (i, j)))
                    .filter(|(i, j)| i < j)
                    .map(|(i, j)| sys.minors().minor(i, j))
                    .collect::<Vec<_>>()
                    .iter(),
            );
            if torsion.is_zero() {
                return Err(Error::internal("simplex face with collinear complement"));
            }
            // B'_beta: B_beta plus the row w_beta (dropped when zero)
            let w_is_zero = wx.is_zero() && wy.is_zero();
            let m = idxs.len() + usize::from(!w_is_zero);
            let mut bp = IntegerMatrix::zero(m, 2);
            for (r, &i) in idxs.iter().enumerate() {
                let (x, y) = sys.b_row(i);
                bp.set(r, 0, x.clone());
                bp.set(r, 1, y.clone());
            }
            if !w_is_zero {
                bp.set(idxs.len(), 0, wx.clone());
                bp.set(idxs.len(), 1, wy.clone());
            }
            let degree = lattice_ideal_degree_codim2(&bp)?;
            let mut correction = BigInt::zero();
            if !w_is_zero {
                for &j in &idxs {
                    let (x, y) = sys.b_row(j);
                    let d = det2((&wx, &wy), (x, y));
                    if d.is_positive() {
                        correction += d;
                    }
                }
            }
            let mu = exact_div(degree - correction, &torsion, "mu(P, beta)")?;
            Ok((mu, torsion))
        }
    }
}

fn mu_i_on_line(line: &RelevantLineData) -> Result<(BigInt, BigInt)> {
    let g = gcd_iter(line.lambdas.values());
    if g.is_zero() {
        return Err(Error::internal("relevant line with all-zero lambdas"));
    }
    let (pos, neg) = signed_sums(line.lambdas.values());
    if pos.is_zero() || neg.is_zero() {
        return Err(Error::internal("relevant-line face with one-signed lambdas"));
    }
    let mu = exact_div(pos.min(neg), &g, "mu on relevant line")?;
    Ok((mu, g))
}

/// `(mu(alpha, beta), i(alpha, beta))` for proper faces `beta ⊂ alpha`.
pub fn mu_i_pair(alpha: &Face, beta: &Face, sys: &GaleSystem) -> Result<(BigInt, BigInt)> {
    if alpha.kind == FaceKind::FullPolytope {
        return Err(Error::validation("use mu_i_full for alpha = P"));
    }
    if !contains(alpha, beta) || alpha.complement == beta.complement {
        return Err(Error::validation("beta is not a proper face of alpha"));
    }
    match (alpha.kind, beta.kind) {
        (FaceKind::Simplex, _) | (_, FaceKind::RelevantLineFace) => {
            Ok((BigInt::one(), BigInt::one()))
        }
        (FaceKind::RelevantLineFace, FaceKind::Simplex) => {
            let line = alpha
                .line
                .as_ref()
                .ok_or_else(|| Error::internal("relevant-line face without line data"))?;
            let v = (&line.v.0, &line.v.1);
            let idxs = mask_to_indices(beta.complement, sys.n());
            let gammas: Vec<BigInt> = idxs
                .iter()
                .map(|&i| {
                    let (x, y) = sys.b_row(i);
                    det2(v, (x, y))
                })
                .collect();
            let g = gcd_iter(gammas.iter());
            if g.is_zero() {
                return Err(Error::internal("gamma vector vanished"));
            }
            let (pos, neg) = signed_sums(gammas.iter());
            let mu = exact_div(pos.min(neg), &g, "mu(alpha, beta)")?;
            Ok((mu, g))
        }
        _ => unreachable!("full polytope handled above"),
    }
}

/// Normalized volume of a face: 1 for simplices, the positive-determinant sum
/// over the face's own lattice points for relevant-line faces, and the
/// codimension-two lattice ideal degree of `B` for `P` itself.
pub fn face_volume(beta: &Face, sys: &GaleSystem) -> Result<BigInt> {
    match beta.kind {
        FaceKind::FullPolytope => lattice_ideal_degree_codim2(sys.b()),
        FaceKind::Simplex => Ok(BigInt::one()),
        FaceKind::RelevantLineFace => {
            let line = beta
                .line
                .as_ref()
                .ok_or_else(|| Error::internal("relevant-line face without line data"))?;
            let v = (&line.v.0, &line.v.1);
            let mut total = BigInt::zero();
            for j in 0..sys.n() {
                if beta.complement & (1 << j) != 0 {
                    continue;
                }
                let (x, y) = sys.b_row(j);
                let d = det2(v, (x, y));
                if d.is_positive() {
                    total += d;
                }
            }
            Ok(total)
        }
    }
}
