//! Fully specified filtered complexes and their spectral sequences.
//!
//! Each basis vector sits in a cell `(p, k)`: filtration column `p` and
//! degree `k`. The filtration is decreasing, so the differential may only
//! raise the column. A page is computed from the previous one by contracting
//! its lowest-shift part and transferring the rest with the perturbation
//! series.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contraction::{auto_contraction, CochainComplex};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::params::{int, Rational};

pub type CellRanks = BTreeMap<(usize, usize), usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    cols: Vec<usize>,
    degs: Vec<usize>,
    d: QMatrix,
}

impl FilteredComplex {
    /// Checks degree `+1`, that no entry lowers the column, and `d d = 0`.
    pub fn new(cols: Vec<usize>, degs: Vec<usize>, d: QMatrix) -> Result<Self> {
        let n = cols.len();
        if degs.len() != n || d.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "{} columns, {} degrees, differential {}x{}",
                n,
                degs.len(),
                d.rows(),
                d.cols()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if num_traits::Zero::is_zero(&d[(i, j)]) {
                    continue;
                }
                if degs[i] != degs[j] + 1 {
                    return Err(Error::NotAComplex(format!("entry ({},{}) does not raise the degree by one", i + 1, j + 1)));
                }
                if cols[i] < cols[j] {
                    return Err(Error::NotAComplex(format!("entry ({},{}) lowers the filtration", i + 1, j + 1)));
                }
            }
        }
        if !(&d * &d).is_zero() {
            return Err(Error::NotAComplex("d * d != 0".into()));
        }
        Ok(FilteredComplex { cols, degs, d })
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn differential(&self) -> &QMatrix {
        &self.d
    }

    pub fn cell_of(&self, idx: usize) -> (usize, usize) {
        (self.cols[idx], self.degs[idx])
    }

    /// Basis indices of each nonempty cell.
    pub fn cells(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for i in 0..self.len() {
            out.entry(self.cell_of(i)).or_default().push(i);
        }
        out
    }

    pub fn cell_ranks(&self) -> CellRanks {
        self.cells().into_iter().map(|(c, v)| (c, v.len())).collect()
    }

    /// Part of `d` raising the column by exactly `r`.
    pub fn shift_part(&self, r: usize) -> QMatrix {
        let mut out = QMatrix::zeros(self.len(), self.len());
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.cols[i] == self.cols[j] + r {
                    out[(i, j)] = self.d[(i, j)].clone();
                }
            }
        }
        out
    }

    pub fn column_span(&self) -> usize {
        match (self.cols.iter().min(), self.cols.iter().max()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    fn degree_indices(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degs[i] == k).collect()
    }
}

/// A contraction of the shift-`r` part of a filtered complex, written in
/// global coordinates. `i` and `p` preserve cells; `h` lowers the column by
/// `r` and the degree by one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredContraction {
    pub shift: usize,
    pub i: QMatrix,
    pub p: QMatrix,
    pub h: QMatrix,
    /// Cells of the homology basis.
    pub cols: Vec<usize>,
    pub degs: Vec<usize>,
}

/// Contracts the shift-`r` part cell chain by cell chain.
pub fn page_contraction(fc: &FilteredComplex, r: usize) -> Result<FilteredContraction> {
    let dr = fc.shift_part(r);
    let cells = fc.cells();
    // a chain is a maximal run (p, k), (p + r, k + 1), ...
    let mut chains: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for &(p, k) in cells.keys() {
        let key = if r == 0 {
            p as i64
        } else {
            p as i64 - (r * k) as i64
        };
        chains.entry(key).or_default().push((p, k));
    }
    let n = fc.len();
    let mut blocks = Vec::new();
    for members in chains.values() {
        let kmin = members.iter().map(|c| c.1).min().unwrap();
        let kmax = members.iter().map(|c| c.1).max().unwrap();
        let p_at = |k: usize| {
            if r == 0 {
                members[0].0
            } else {
                members[0].0 + r * k - r * members[0].1
            }
        };
        let idx: Vec<Vec<usize>> = (kmin..=kmax)
            .map(|k| cells.get(&(p_at(k), k)).cloned().unwrap_or_default())
            .collect();
        let dims: Vec<usize> = idx.iter().map(Vec::len).collect();
        let d: Vec<QMatrix> = (0..idx.len().saturating_sub(1))
            .map(|j| dr.select(&idx[j + 1], &idx[j]))
            .collect();
        let cx = CochainComplex::new(dims, d)?;
        let c = auto_contraction(&cx)?;
        blocks.push((idx, (kmin..=kmax).map(|k| (p_at(k), k)).collect::<Vec<_>>(), c));
    }
    let m: usize = blocks.iter().map(|(_, _, c)| c.homology_dims().iter().sum::<usize>()).sum();
    let mut out = FilteredContraction {
        shift: r,
        i: QMatrix::zeros(n, m),
        p: QMatrix::zeros(m, n),
        h: QMatrix::zeros(n, n),
        cols: Vec::with_capacity(m),
        degs: Vec::with_capacity(m),
    };
    let mut next = 0;
    for (idx, cells, c) in &blocks {
        for (j, members) in idx.iter().enumerate() {
            let hdim = c.i[j].cols();
            for a in 0..hdim {
                for (row, &g) in members.iter().enumerate() {
                    out.i[(g, next + a)] = c.i[j][(row, a)].clone();
                    out.p[(next + a, g)] = c.p[j][(a, row)].clone();
                }
                out.cols.push(cells[j].0);
                out.degs.push(cells[j].1);
            }
            next += hdim;
            if j > 0 {
                for (row, &g) in idx[j - 1].iter().enumerate() {
                    for (col, &g2) in members.iter().enumerate() {
                        out.h[(g, g2)] = c.h[j][(row, col)].clone();
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_contraction(fc: &FilteredComplex, c: &FilteredContraction) -> Result<()> {
    let n = fc.len();
    let m = c.cols.len();
    if c.i.shape() != (n, m) || c.p.shape() != (m, n) || c.h.shape() != (n, n) || c.degs.len() != m {
        return Err(Error::ContractionMismatch(format!(
            "complex of rank {n}, contraction shapes i {:?}, p {:?}, h {:?}",
            c.i.shape(),
            c.p.shape(),
            c.h.shape()
        )));
    }
    let d0 = fc.shift_part(c.shift);
    let id_n = QMatrix::identity(n);
    let checks: [(&str, QMatrix, QMatrix); 7] = [
        ("di=0", &d0 * &c.i, QMatrix::zeros(n, m)),
        ("pd=0", &c.p * &d0, QMatrix::zeros(m, n)),
        ("hi=0", &c.h * &c.i, QMatrix::zeros(n, m)),
        ("ph=0", &c.p * &c.h, QMatrix::zeros(m, n)),
        ("hh=0", &c.h * &c.h, QMatrix::zeros(n, n)),
        ("pi=1", &c.p * &c.i, QMatrix::identity(m)),
        ("ip=1-hd-dh", &c.i * &c.p, &(&id_n - &(&c.h * &d0)) - &(&d0 * &c.h)),
    ];
    let bad: Vec<&str> = checks.iter().filter(|(_, a, b)| a != b).map(|(k, _, _)| *k).collect();
    if !bad.is_empty() {
        return Err(Error::ContractionMismatch(format!("identities fail: {}", bad.join(", "))));
    }
    for a in 0..n {
        for b in 0..n {
            let (pa, ka) = fc.cell_of(a);
            let (pb, kb) = fc.cell_of(b);
            if !num_traits::Zero::is_zero(&c.h[(a, b)]) && (ka + 1 != kb || pa + c.shift != pb) {
                return Err(Error::ContractionMismatch(format!("homotopy entry ({},{}) is not homogeneous", a + 1, b + 1)));
            }
        }
        for j in 0..m {
            let cell = (c.cols[j], c.degs[j]);
            let off = |x: &Rational| !num_traits::Zero::is_zero(x) && fc.cell_of(a) != cell;
            if off(&c.i[(a, j)]) || off(&c.p[(j, a)]) {
                return Err(Error::ContractionMismatch(format!("inclusion or projection leaves the cell of vector {}", a + 1)));
            }
        }
    }
    Ok(())
}

/// The transferred differential `p D sum_n (-h D)^n i` with `D = d - d_s`,
/// `s` the contraction's shift. The result lives on the homology basis.
pub fn transfer(fc: &FilteredComplex, c: &FilteredContraction) -> Result<FilteredComplex> {
    check_contraction(fc, c)?;
    let delta = &fc.d - &fc.shift_part(c.shift);
    let minus_hd = -&(&c.h * &delta);
    let mut term = c.i.clone();
    let mut acc = QMatrix::zeros(term.rows(), term.cols());
    // -hD raises the column whenever the contraction is homogeneous; the
    // bound guards against an inhomogeneous one
    for _ in 0..=fc.len() {
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
        term = &minus_hd * &term;
    }
    if !term.is_zero() {
        return Err(Error::ContractionMismatch("perturbation series does not terminate".into()));
    }
    let d = &(&c.p * &delta) * &acc;
    FilteredComplex::new(c.cols.clone(), c.degs.clone(), d)
}

/// Shift-`r` component of the differential transferred through a page-0
/// contraction.
pub fn transfer_differential(fc: &FilteredComplex, c: &FilteredContraction, r: usize) -> Result<QMatrix> {
    let t = transfer(fc, c)?;
    Ok(t.shift_part(r))
}

/// Page `r` of the spectral sequence, as a filtered complex whose
/// differential has shifts `>= r` only.
#[derive(Debug, Clone)]
pub struct SyntheticPage {
    pub r: usize,
    pub complex: FilteredComplex,
}

/// Pages `E_0, E_1, ...` up to the first page past the column span, which
/// is `E_inf`.
pub fn spectral_sequence(fc: &FilteredComplex) -> Result<Vec<SyntheticPage>> {
    let mut pages = vec![SyntheticPage {
        r: 0,
        complex: fc.clone(),
    }];
    let last = fc.column_span() + 1;
    for r in 0..last {
        let cur = &pages[r].complex;
        let c = page_contraction(cur, r)?;
        let next = transfer(cur, &c)?;
        pages.push(SyntheticPage { r: r + 1, complex: next });
    }
    Ok(pages)
}

pub fn einf_ranks(fc: &FilteredComplex) -> Result<CellRanks> {
    let pages = spectral_sequence(fc)?;
    let last = &pages.last().expect("at least one page").complex;
    if !last.differential().is_zero() {
        return Err(Error::NotAComplex("differential survives past the column span".into()));
    }
    Ok(last.cell_ranks())
}

/// `dim Gr^p H^k` straight from the full differential:
/// `[dim(Z ∩ F^p) - dim(B ∩ F^p)] - [same at p + 1]`.
pub fn brute_force_gr_homology(fc: &FilteredComplex) -> CellRanks {
    let mut out = CellRanks::new();
    let max_deg = fc.degs.iter().copied().max().unwrap_or(0);
    let max_col = fc.cols.iter().copied().max().unwrap_or(0);
    for k in 0..=max_deg {
        let s = fc.degree_indices(k);
        if s.is_empty() {
            continue;
        }
        let next = fc.degree_indices(k + 1);
        let prev = if k == 0 { Vec::new() } else { fc.degree_indices(k - 1) };
        let z = fc.d.select(&next, &s).kernel_basis();
        let b = fc.d.select(&s, &prev).column_basis();
        let in_filtration = |m: &QMatrix, p: usize| {
            let low: Vec<usize> = (0..s.len()).filter(|&a| fc.cols[s[a]] < p).collect();
            let all: Vec<usize> = (0..m.cols()).collect();
            m.cols() - m.select(&low, &all).rank()
        };
        let h = |p: usize| in_filtration(&z, p) - in_filtration(&b, p);
        for p in 0..=max_col {
            let v = h(p) - h(p + 1);
            if v > 0 {
                out.insert((p, k), v);
            }
        }
    }
    out
}

/// A random complex together with the `E_inf` ranks known from its
/// construction.
#[derive(Debug, Clone)]
pub struct SyntheticComplex {
    pub complex: FilteredComplex,
    pub expected_einf: CellRanks,
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d = rng.gen_range(1..=3);
    crate::params::rat(n, d)
}

/// Direct sum of elementary pairs `x -> y` and singletons, conjugated by a
/// random invertible change of basis that preserves cells' filtration and
/// degree. Singletons survive to `E_inf`; a pair dies on the page equal to
/// its column shift.
pub fn random_filtered_complex(seed: u64, max_rank: usize, max_cols: usize) -> SyntheticComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_cols = rng.gen_range(1..=max_cols.max(1));
    let max_deg = 3;
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    let mut pairs = Vec::new();
    let mut expected = CellRanks::new();
    let target = rng.gen_range(1..=max_rank.max(1));
    while cols.len() < target {
        let p = rng.gen_range(0..n_cols);
        let k = rng.gen_range(0..=max_deg);
        if cols.len() + 2 <= target && k < max_deg && rng.gen_bool(0.6) {
            let q = rng.gen_range(p..n_cols);
            pairs.push((cols.len(), cols.len() + 1));
            cols.extend([p, q]);
            degs.extend([k, k + 1]);
        } else {
            cols.push(p);
            degs.push(k);
            *expected.entry((p, k)).or_insert(0) += 1;
        }
    }
    // shuffle so that cells interleave in the basis order
    let n = cols.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut inv = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let cols: Vec<usize> = perm.iter().map(|&o| cols[o]).collect();
    let degs: Vec<usize> = perm.iter().map(|&o| degs[o]).collect();
    let mut d = QMatrix::zeros(n, n);
    for &(x, y) in &pairs {
        d[(inv[y], inv[x])] = random_nonzero(&mut rng);
    }
    // g = 1 + N with N supported on (i, j), same degree, column of i at
    // least that of j, and i after j when the cells coincide: unipotent
    // in a suitable order, hence invertible
    let mut g = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let same_cell = cols[i] == cols[j] && i > j;
            if degs[i] == degs[j] && (cols[i] > cols[j] || same_cell) && rng.gen_bool(0.4) {
                g[(i, j)] = int(rng.gen_range(-3..=3));
            }
        }
    }
    let g_inv = g.inverse().expect("unipotent change of basis");
    let d = &(&g * &d) * &g_inv;
    let complex = FilteredComplex::new(cols, degs, d).expect("conjugate of a filtered complex");
    SyntheticComplex {
        complex,
        expected_einf: expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::rat;

    fn fc(cols: &[usize], degs: &[usize], d: &[&[i64]]) -> FilteredComplex {
        FilteredComplex::new(cols.to_vec(), degs.to_vec(), QMatrix::from_i64(d)).unwrap()
    }

    #[test]
    fn rejects_filtration_breaking_maps() {
        let r = FilteredComplex::new(vec![1, 0], vec![0, 1], QMatrix::from_i64(&[&[0, 0], &[1, 0]]));
        assert!(matches!(r, Err(Error::NotAComplex(_))));
    }

    #[test]
    fn pair_dies_on_its_page() {
        // x in column 0 hits y in column 2
        let c = fc(&[0, 2], &[0, 1], &[&[0, 0], &[1, 0]]);
        let pages = spectral_sequence(&c).unwrap();
        assert_eq!(pages[1].complex.len(), 2);
        assert_eq!(pages[2].complex.len(), 2);
        assert_eq!(pages[3].complex.len(), 0);
        assert!(einf_ranks(&c).unwrap().is_empty());
        assert!(brute_force_gr_homology(&c).is_empty());
    }

    #[test]
    fn zero_perturbation_transfers_to_zero() {
        let c = fc(&[0, 0, 1], &[0, 1, 1], &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        let k = page_contraction(&c, 0).unwrap();
        for r in 0..3 {
            assert!(transfer_differential(&c, &k, r).unwrap().is_zero());
        }
    }

    #[test]
    fn two_term_truncation() {
        // columns 0..2, shifts 0, 1 and 2 only; compare with p(D2 - D1 h D1)i
        for seed in 0..30 {
            let s = random_filtered_complex(seed, 14, 3);
            let c = &s.complex;
            let k = page_contraction(c, 0).unwrap();
            let d1 = c.shift_part(1);
            let d2 = c.shift_part(2);
            let expect = &(&k.p * &(&d2 - &(&(&d1 * &k.h) * &d1))) * &k.i;
            let got = transfer_differential(c, &k, 2).unwrap();
            // restrict the expectation to shift 2 between homology cells
            let mut e2 = QMatrix::zeros(got.rows(), got.cols());
            for a in 0..got.rows() {
                for b in 0..got.cols() {
                    if k.cols[a] == k.cols[b] + 2 {
                        e2[(a, b)] = expect[(a, b)].clone();
                    }
                }
            }
            assert_eq!(got, e2, "seed {seed}");
        }
    }

    #[test]
    fn mismatched_contraction_is_rejected() {
        let c = fc(&[0, 0], &[0, 1], &[&[0, 0], &[1, 0]]);
        let mut k = page_contraction(&c, 0).unwrap();
        k.h[(0, 1)] = rat(2, 1);
        assert!(matches!(transfer(&c, &k), Err(Error::ContractionMismatch(_))));
        let other = fc(&[0], &[0], &[&[0]]);
        assert!(matches!(transfer(&other, &k), Err(Error::ContractionMismatch(_))));
    }

    #[test]
    fn oracles_agree_on_random_complexes() {
        for seed in 0..60 {
            let s = random_filtered_complex(seed, 30, 5);
            let brute = brute_force_gr_homology(&s.complex);
            assert_eq!(brute, s.expected_einf, "seed {seed}: brute force vs construction");
            assert_eq!(einf_ranks(&s.complex).unwrap(), brute, "seed {seed}: transfer vs brute force");
        }
    }

    #[test]
    fn total_euler_characteristic_is_page_invariant() {
        let s = random_filtered_complex(3, 24, 4);
        let chi = |r: &CellRanks| r.iter().map(|(&(_, k), &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum::<i64>();
        let pages = spectral_sequence(&s.complex).unwrap();
        let first = chi(&pages[0].complex.cell_ranks());
        for p in &pages {
            assert_eq!(chi(&p.complex.cell_ranks()), first);
        }
    }
}
