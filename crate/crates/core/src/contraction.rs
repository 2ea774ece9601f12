//! Contractions `(i, p, h)` of finite cochain complexes over the rationals.
//!
//! Given representatives `R_k` of homology and complements `L_k` of the
//! cycles, every degree splits as `d L_{k-1} + R_k + L_k`. In that basis `i`
//! includes `R`, `p` projects onto the `R` coordinates and `h` sends
//! `d L_{k-1}` back to `L_{k-1}`, vanishing on `R_k + L_k`.

use serde::Serialize;

use crate::corpus::{Block, CaseFixture, DEGREES};
use crate::error::{Error, Result};
use crate::linalg::{homology_at, span_contains, QMatrix};
use crate::params::ParamPoint;

/// `d[k]` maps degree `k` to degree `k + 1` and has shape `dims[k+1] x dims[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    d: Vec<QMatrix>,
}

impl CochainComplex {
    /// Checks shapes and `d d = 0`. `d` may be shorter than `dims`; the
    /// missing differentials are zero.
    pub fn new(dims: Vec<usize>, mut d: Vec<QMatrix>) -> Result<Self> {
        if d.len() > dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} differentials for {} degrees",
                d.len(),
                dims.len()
            )));
        }
        for k in d.len()..dims.len() {
            let next = dims.get(k + 1).copied().unwrap_or(0);
            d.push(QMatrix::zeros(next, dims[k]));
        }
        for (k, m) in d.iter().enumerate() {
            let next = dims.get(k + 1).copied().unwrap_or(0);
            if m.shape() != (next, dims[k]) {
                return Err(Error::DimensionMismatch(format!(
                    "d{k} is {}x{}, expected {next}x{}",
                    m.rows(),
                    m.cols(),
                    dims[k]
                )));
            }
        }
        for k in 1..d.len() {
            if !(&d[k] * &d[k - 1]).is_zero() {
                return Err(Error::NotAComplex(format!("d{k} * d{} != 0", k - 1)));
            }
        }
        Ok(CochainComplex { dims, d })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `d_k`; for `k` outside the range the appropriate zero map.
    pub fn d(&self, k: isize) -> QMatrix {
        let dim = |j: isize| {
            if j < 0 {
                0
            } else {
                self.dims.get(j as usize).copied().unwrap_or(0)
            }
        };
        if k >= 0 && (k as usize) < self.d.len() {
            self.d[k as usize].clone()
        } else {
            QMatrix::zeros(dim(k + 1), dim(k))
        }
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|k| {
                let k = k as isize;
                homology_at(&self.d(k - 1), &self.d(k)).expect("valid complex").dimension
            })
            .collect()
    }

    /// Degreewise direct sum.
    pub fn direct_sum(parts: &[&CochainComplex]) -> Result<CochainComplex> {
        let n = parts.iter().map(|c| c.len()).max().unwrap_or(0);
        let dims: Vec<usize> = (0..n)
            .map(|k| parts.iter().map(|c| c.dims.get(k).copied().unwrap_or(0)).sum())
            .collect();
        let d: Vec<QMatrix> = (0..n)
            .map(|k| {
                let blocks: Vec<QMatrix> = parts.iter().map(|c| c.d(k as isize)).collect();
                QMatrix::block_diagonal(&blocks)
            })
            .collect();
        CochainComplex::new(dims, d)
    }
}

/// Per-degree matrices: `i[k]` is `dims[k] x H_k`, `p[k]` is `H_k x dims[k]`
/// and `h[k]` is `dims[k-1] x dims[k]` (with `h[0]` of shape `0 x dims[0]`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contraction {
    #[serde(serialize_with = "ser_mats")]
    pub i: Vec<QMatrix>,
    #[serde(serialize_with = "ser_mats")]
    pub p: Vec<QMatrix>,
    #[serde(serialize_with = "ser_mats")]
    pub h: Vec<QMatrix>,
}

fn ser_mats<S: serde::Serializer>(m: &[QMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(QMatrix::to_strings))
}

impl Contraction {
    pub fn homology_dims(&self) -> Vec<usize> {
        self.i.iter().map(QMatrix::cols).collect()
    }

    /// Degreewise block-diagonal assembly.
    pub fn direct_sum(parts: &[&Contraction]) -> Contraction {
        let n = parts.iter().map(|c| c.i.len()).max().unwrap_or(0);
        let pick = |f: &dyn Fn(&Contraction) -> &Vec<QMatrix>, k: usize| -> Vec<QMatrix> {
            parts.iter().filter_map(|c| f(c).get(k).cloned()).collect()
        };
        Contraction {
            i: (0..n).map(|k| QMatrix::block_diagonal(&pick(&|c| &c.i, k))).collect(),
            p: (0..n).map(|k| QMatrix::block_diagonal(&pick(&|c| &c.p, k))).collect(),
            h: (0..n).map(|k| QMatrix::block_diagonal(&pick(&|c| &c.h, k))).collect(),
        }
    }

    fn h_at(&self, k: isize, cx: &CochainComplex) -> QMatrix {
        if k >= 0 && (k as usize) < self.h.len() {
            self.h[k as usize].clone()
        } else {
            let dim = |j: isize| if j < 0 { 0 } else { cx.dims.get(j as usize).copied().unwrap_or(0) };
            QMatrix::zeros(dim(k - 1), dim(k))
        }
    }

    fn p_at(&self, k: isize, cx: &CochainComplex) -> QMatrix {
        if k >= 0 && (k as usize) < self.p.len() {
            self.p[k as usize].clone()
        } else {
            let dim = if k < 0 { 0 } else { cx.dims.get(k as usize).copied().unwrap_or(0) };
            QMatrix::zeros(0, dim)
        }
    }
}

/// Builds the unique contraction with `i = reps` whose `p` and `h` vanish on
/// the prescribed complements. `reps[k]` and `complements[k]` hold column
/// vectors in degree `k`.
pub fn build_contraction(
    cx: &CochainComplex,
    reps: &[QMatrix],
    complements: &[QMatrix],
) -> Result<Contraction> {
    let n = cx.len();
    if reps.len() != n || complements.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} degrees but {} representative and {} complement sets",
            n,
            reps.len(),
            complements.len()
        )));
    }
    for k in 0..n {
        let dk = cx.d(k as isize);
        let l = &complements[k];
        if l.rows() != cx.dims[k] {
            return Err(Error::DimensionMismatch(format!("complement in degree {k} has wrong length")));
        }
        if l.cols() + dk.nullity() != cx.dims[k] || (&dk * l).rank() != l.cols() {
            return Err(Error::NotComplement(format!(
                "degree {k}: span of {} vectors does not complement a kernel of dimension {}",
                l.cols(),
                dk.nullity()
            )));
        }
    }
    let mut out = Contraction {
        i: Vec::new(),
        p: Vec::new(),
        h: Vec::new(),
    };
    for k in 0..n {
        let dk = cx.d(k as isize);
        let r = &reps[k];
        if r.rows() != cx.dims[k] {
            return Err(Error::DimensionMismatch(format!("representatives in degree {k} have wrong length")));
        }
        if !(&dk * r).is_zero() {
            return Err(Error::NotRepresentative(format!("degree {k}: a representative is not a cycle")));
        }
        let (prev_l, b) = if k == 0 {
            (QMatrix::zeros(0, 0), QMatrix::zeros(cx.dims[0], 0))
        } else {
            let prev_l = complements[k - 1].clone();
            let b = &cx.d(k as isize - 1) * &prev_l;
            (prev_l, b)
        };
        let h_dim = dk.nullity() - b.cols();
        let br = b.hstack(r);
        if r.cols() != h_dim || br.rank() != br.cols() {
            return Err(Error::NotRepresentative(format!(
                "degree {k}: {} vectors, homology has dimension {h_dim}",
                r.cols()
            )));
        }
        let t = br.hstack(&complements[k]);
        let t_inv = t.inverse().expect("boundaries, representatives and complement form a basis");
        let (nb, nr) = (b.cols(), r.cols());
        let all_cols: Vec<usize> = (0..cx.dims[k]).collect();
        let rows_b: Vec<usize> = (0..nb).collect();
        let rows_r: Vec<usize> = (nb..nb + nr).collect();
        out.i.push(r.clone());
        out.p.push(t_inv.select(&rows_r, &all_cols));
        let h = if k == 0 {
            QMatrix::zeros(0, cx.dims[0])
        } else {
            &prev_l * &t_inv.select(&rows_b, &all_cols)
        };
        out.h.push(h);
    }
    Ok(out)
}

/// Pass/fail of one contraction identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub ok: bool,
    /// First failing degree and entry (1-based).
    pub first_failure: Option<String>,
}

fn compare(name: &'static str, cases: Vec<(usize, QMatrix, QMatrix)>) -> IdentityCheck {
    for (k, got, want) in cases {
        if got.shape() != want.shape() {
            return IdentityCheck {
                identity: name,
                ok: false,
                first_failure: Some(format!("degree {k}: shape {:?} vs {:?}", got.shape(), want.shape())),
            };
        }
        for i in 0..got.rows() {
            for j in 0..got.cols() {
                if got[(i, j)] != want[(i, j)] {
                    return IdentityCheck {
                        identity: name,
                        ok: false,
                        first_failure: Some(format!(
                            "degree {k}, entry ({},{}): {} instead of {}",
                            i + 1,
                            j + 1,
                            got[(i, j)],
                            want[(i, j)]
                        )),
                    };
                }
            }
        }
    }
    IdentityCheck {
        identity: name,
        ok: true,
        first_failure: None,
    }
}

/// Checks `di = pd = hi = ph = hh = 0`, `pi = 1` and `ip = 1 - hd - dh`.
pub fn verify_contraction(c: &Contraction, cx: &CochainComplex) -> Vec<IdentityCheck> {
    let n = cx.len();
    let zero = |m: QMatrix| QMatrix::zeros(m.rows(), m.cols());
    let mut di = Vec::new();
    let mut pd = Vec::new();
    let mut hi = Vec::new();
    let mut ph = Vec::new();
    let mut hh = Vec::new();
    let mut pi = Vec::new();
    let mut ip = Vec::new();
    let shapes_ok = c.i.len() == n && c.p.len() == n && c.h.len() == n;
    if !shapes_ok {
        let fail = |name| IdentityCheck {
            identity: name,
            ok: false,
            first_failure: Some(format!("contraction covers {} degrees, complex has {n}", c.i.len())),
        };
        return ["di=0", "pd=0", "hi=0", "ph=0", "hh=0", "pi=1", "ip=1-hd-dh"].map(fail).to_vec();
    }
    for k in 0..n {
        let ki = k as isize;
        let d = cx.d(ki);
        let d_prev = cx.d(ki - 1);
        let (i, p, h) = (&c.i[k], &c.p[k], &c.h[k]);
        let mul = |a: &QMatrix, b: &QMatrix| a.try_mul(b);
        let checked = (|| -> Result<()> {
            let x = mul(&d, i)?;
            di.push((k, x.clone(), zero(x)));
            let x = mul(&c.p_at(ki + 1, cx), &d)?;
            pd.push((k, x.clone(), zero(x)));
            let x = mul(h, i)?;
            hi.push((k, x.clone(), zero(x)));
            let x = mul(&c.p_at(ki - 1, cx), h)?;
            ph.push((k, x.clone(), zero(x)));
            let x = mul(&c.h_at(ki - 1, cx), h)?;
            hh.push((k, x.clone(), zero(x)));
            pi.push((k, mul(p, i)?, QMatrix::identity(i.cols())));
            let rhs = &(&QMatrix::identity(cx.dims[k]) - &mul(&c.h_at(ki + 1, cx), &d)?) - &mul(&d_prev, h)?;
            ip.push((k, mul(i, p)?, rhs));
            Ok(())
        })();
        if let Err(e) = checked {
            let fail = |name| IdentityCheck {
                identity: name,
                ok: false,
                first_failure: Some(format!("degree {k}: {e}")),
            };
            return ["di=0", "pd=0", "hi=0", "ph=0", "hh=0", "pi=1", "ip=1-hd-dh"].map(fail).to_vec();
        }
    }
    vec![
        compare("di=0", di),
        compare("pd=0", pd),
        compare("hi=0", hi),
        compare("ph=0", ph),
        compare("hh=0", hh),
        compare("pi=1", pi),
        compare("ip=1-hd-dh", ip),
    ]
}

/// A contraction with representatives and complements read off echelon
/// pivots.
pub fn auto_contraction(cx: &CochainComplex) -> Result<Contraction> {
    let n = cx.len();
    let mut reps = Vec::with_capacity(n);
    let mut complements = Vec::with_capacity(n);
    for k in 0..n {
        let ki = k as isize;
        reps.push(homology_at(&cx.d(ki - 1), &cx.d(ki))?.representatives);
        let (_, pivots) = cx.d(ki).rref();
        complements.push(QMatrix::identity(cx.dims[k]).select_columns(&pivots));
    }
    build_contraction(cx, &reps, &complements)
}

/// Cochain complex of one coarse block `G_b C` at a point.
pub fn block_complex(fx: &CaseFixture, b: Block, pt: &ParamPoint) -> Result<CochainComplex> {
    let dims: Vec<usize> = fx.basis.block_ranks(b).to_vec();
    let d: Vec<QMatrix> = (0..DEGREES - 1)
        .map(|k| fx.block_matrix(b, k, pt))
        .collect::<Result<_>>()?;
    CochainComplex::new(dims, d)
}

/// Contraction of one block from the fixture's representatives and
/// complements. Degrees without a prescribed complement need a kernel that
/// is zero or everything.
pub fn fixture_contraction(fx: &CaseFixture, b: Block, pt: &ParamPoint) -> Result<(CochainComplex, Contraction)> {
    let cx = block_complex(fx, b, pt)?;
    let mut reps = Vec::new();
    let mut complements = Vec::new();
    for k in 0..cx.len() {
        reps.push(fx.representatives_at(b, k, pt)?);
        let dim = cx.dims[k];
        let dk = cx.d(k as isize);
        let l = match fx.complements.get(&(b, k)) {
            Some(spec) => spec.basis(dim, pt)?,
            None => match dk.nullity() {
                0 => QMatrix::identity(dim),
                z if z == dim => QMatrix::zeros(dim, 0),
                z => {
                    return Err(Error::NotComplement(format!(
                        "block {b}, degree {k}: no complement prescribed but the kernel has dimension {z} of {dim}"
                    )))
                }
            },
        };
        complements.push(l);
    }
    let c = build_contraction(&cx, &reps, &complements).map_err(|e| match e {
        Error::NotComplement(m) => Error::NotComplement(format!("block {b}: {m}")),
        Error::NotRepresentative(m) => Error::NotRepresentative(format!("block {b}: {m}")),
        other => other,
    })?;
    Ok((cx, c))
}

/// Checks that the fixture's representatives span the same homology as a
/// freshly computed basis, i.e. `span(reps) + im d = span(computed) + im d`.
pub fn representatives_match(cx: &CochainComplex, k: usize, reps: &QMatrix) -> Result<bool> {
    let ki = k as isize;
    let h = homology_at(&cx.d(ki - 1), &cx.d(ki))?;
    let bnd = cx.d(ki - 1).column_basis();
    let a = bnd.hstack(reps);
    let b = bnd.hstack(&h.representatives);
    Ok(reps.cols() == h.dimension && span_contains(&a, &b) && span_contains(&b, &a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::bundled;
    use crate::params::{int, rat, Case};

    fn all_pass(checks: &[IdentityCheck]) -> bool {
        checks.iter().all(|c| c.ok)
    }

    #[test]
    fn reference_block_00() {
        let fx = bundled(Case::Free);
        let pt = ParamPoint::reference_free();
        let (cx, c) = fixture_contraction(&fx, Block::new(0, 0), &pt).unwrap();
        assert_eq!(&c.p[0] * &c.i[0], QMatrix::identity(3));
        assert!(all_pass(&verify_contraction(&c, &cx)));
        assert_eq!(c.homology_dims(), vec![3, 1, 0, 0, 0]);
    }

    #[test]
    fn block_11_homotopy_shape() {
        let fx = bundled(Case::Free);
        let (cx, c) = fixture_contraction(&fx, Block::new(1, 1), &ParamPoint::reference_free()).unwrap();
        assert_eq!(c.h[2].shape(), (9, 7));
        assert!(all_pass(&verify_contraction(&c, &cx)));
        assert_eq!(auto_contraction(&cx).unwrap().homology_dims()[..3], [0, 0, 0]);
    }

    #[test]
    fn non_cycle_representative_is_rejected() {
        let fx = bundled(Case::Free);
        let pt = ParamPoint::reference_free();
        let cx = block_complex(&fx, Block::new(0, 0), &pt).unwrap();
        let mut reps: Vec<QMatrix> = (0..5).map(|k| fx.representatives_at(Block::new(0, 0), k, &pt).unwrap()).collect();
        reps[0] = QMatrix::identity(5).select_columns(&[0]);
        let comps: Vec<QMatrix> = (0..5)
            .map(|k| match fx.complements.get(&(Block::new(0, 0), k)) {
                Some(s) => s.basis(cx.dims()[k], &pt).unwrap(),
                None => auto_complement(&cx, k),
            })
            .collect();
        assert!(matches!(build_contraction(&cx, &reps, &comps), Err(Error::NotRepresentative(_))));
    }

    fn auto_complement(cx: &CochainComplex, k: usize) -> QMatrix {
        let (_, piv) = cx.d(k as isize).rref();
        QMatrix::identity(cx.dims()[k]).select_columns(&piv)
    }

    #[test]
    fn bad_complement_is_rejected() {
        // kernel of [1 1] is spanned by (1,-1); (1,-1) cannot complement it
        let cx = CochainComplex::new(vec![2, 1], vec![QMatrix::from_i64(&[&[1, 1]])]).unwrap();
        let reps = vec![QMatrix::zeros(2, 0), QMatrix::zeros(1, 0)];
        let comps = vec![QMatrix::from_i64(&[&[1], &[-1]]), QMatrix::zeros(1, 0)];
        assert!(matches!(build_contraction(&cx, &reps, &comps), Err(Error::NotComplement(_))));
    }

    #[test]
    fn zero_differential() {
        let cx = CochainComplex::new(vec![3], vec![]).unwrap();
        let c = auto_contraction(&cx).unwrap();
        assert_eq!(c.i[0], QMatrix::identity(3));
        assert_eq!(c.p[0], QMatrix::identity(3));
        assert!(c.h[0].is_zero());
    }

    #[test]
    fn acyclic_pair() {
        let cx = CochainComplex::new(vec![1, 1], vec![QMatrix::from_i64(&[&[1]])]).unwrap();
        let c = auto_contraction(&cx).unwrap();
        assert_eq!(c.homology_dims(), vec![0, 0]);
        assert_eq!(c.h[1], QMatrix::from_i64(&[&[1]]));
        assert!(all_pass(&verify_contraction(&c, &cx)));
    }

    #[test]
    fn perturbed_homotopy_fails() {
        let fx = bundled(Case::Free);
        let (cx, mut c) = fixture_contraction(&fx, Block::new(1, 1), &ParamPoint::reference_free()).unwrap();
        c.h[2][(0, 0)] += int(1);
        let checks = verify_contraction(&c, &cx);
        let failed: Vec<_> = checks.iter().filter(|c| !c.ok).map(|c| c.identity).collect();
        assert!(failed.contains(&"ip=1-hd-dh") || failed.contains(&"hh=0"), "{failed:?}");
        assert!(checks.iter().find(|c| !c.ok).unwrap().first_failure.is_some());
    }

    #[test]
    fn every_block_both_cases() {
        for case in [Case::Free, Case::Bounce] {
            let fx = bundled(case);
            let pt = ParamPoint::reference(case);
            for b in Block::ALL {
                let (cx, c) = fixture_contraction(&fx, b, &pt).unwrap();
                assert!(all_pass(&verify_contraction(&c, &cx)), "{case} {b}");
                for k in 0..cx.len() {
                    assert!(representatives_match(&cx, k, &c.i[k]).unwrap(), "{case} {b} {k}");
                }
            }
        }
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let fx = bundled(Case::Free);
        let pt = ParamPoint::reference_free();
        let (c10, k10) = fixture_contraction(&fx, Block::new(1, 0), &pt).unwrap();
        let (c01, k01) = fixture_contraction(&fx, Block::new(0, 1), &pt).unwrap();
        let cx = CochainComplex::direct_sum(&[&c10, &c01]).unwrap();
        let k = Contraction::direct_sum(&[&k10, &k01]);
        assert!(all_pass(&verify_contraction(&k, &cx)));
        assert_eq!(k.homology_dims(), vec![0, 10, 0, 0, 0]);
        assert_eq!(k.i[1][(14, 5)], rat(0, 1));
    }
}
