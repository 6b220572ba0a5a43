//! A small model of the dual-index cutoff complexes.
//!
//! The boundary splits as `d = d0 + t`, where `d0` keeps the dual index
//! `j` and is the trivial-coefficient boundary of the exterior algebra
//! of `L1` in weight `k + j`, while `t` lowers `j`. A deformation retract
//! of each exterior block onto its homology, perturbed by `t`, gives a
//! complex with one generator per homology class of each block and a
//! differential `D = pi t sum (-h t)^n iota`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::complex::{convert, rank_of, IntRow};
use crate::cochain::chain::boundary_terms;
use crate::cochain::{sort_with_sign, tuples_with_sum, ChainElement, Tuple};
use crate::error::Result;
use crate::exact::{invert_dense, Echelon, Fp, Rational, SparseMatrix, SparseVec};

/// Basis of the weight-`w` part of the `d`-th exterior power of `L1`.
#[derive(Debug)]
pub struct ExteriorBlock {
    pub d: usize,
    pub w: i64,
    basis: Vec<Tuple>,
    index: HashMap<Tuple, usize>,
}

impl ExteriorBlock {
    pub fn new(d: usize, w: i64) -> Self {
        let basis = tuples_with_sum(d, w);
        let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        ExteriorBlock { d, w, basis, index }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Tuple] {
        &self.basis
    }

    pub fn index_of(&self, t: &[i64]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// `d0` of each basis element in the coordinates of `lower`.
    fn boundary_rows(&self, lower: &ExteriorBlock) -> Vec<IntRow> {
        self.basis
            .iter()
            .map(|g| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                // dual index 0 leaves only the bracket terms
                boundary_terms(0, g, |_, args, c| {
                    let (s, t) = sort_with_sign(args);
                    if s != 0 && c != 0 {
                        *acc.entry(lower.index_of(&t).expect("same weight")).or_default() += s as i64 * c;
                    }
                });
                acc.into_iter().filter(|e| e.1 != 0).collect()
            })
            .collect()
    }
}

/// Homology dimension of an exterior block computed modulo a prime; an
/// upper bound for the rational dimension.
fn block_homology_mod_p(d: usize, w: i64) -> Result<usize> {
    let cur = ExteriorBlock::new(d, w);
    if cur.is_empty() {
        return Ok(0);
    }
    let up = ExteriorBlock::new(d + 1, w);
    let r_out = if d == 0 { 0 } else { rank_of::<Fp>(cur.boundary_rows(&ExteriorBlock::new(d - 1, w)))?.1 };
    let r_in = rank_of::<Fp>(up.boundary_rows(&cur))?.1;
    Ok(cur.len() - r_out - r_in)
}

/// Basis elements whose boundaries are independent, chosen greedily in
/// basis order.
fn select_independent(rows: Vec<IntRow>) -> Result<Vec<usize>> {
    let mut e: Echelon<Rational> = Echelon::new();
    let mut out = Vec::new();
    for (i, r) in rows.into_iter().enumerate() {
        if e.insert(convert(r))?.is_some() {
            out.push(i);
        }
    }
    Ok(out)
}

/// Deformation retract of one exterior block onto its homology:
/// `d0 h + h d0 = 1 - iota pi`.
#[derive(Debug)]
pub struct Retract {
    pub block: ExteriorBlock,
    upper: ExteriorBlock,
    n_c: usize,
    /// Elements of the block above whose boundaries span the boundaries.
    lifts: Vec<usize>,
    /// Homology representatives.
    cycles: Vec<SparseVec<Rational>>,
    /// Columns of the inverse change of basis, indexed by basis element.
    inverse: Vec<SparseVec<Rational>>,
}

impl Retract {
    pub fn new(d: usize, w: i64) -> Result<Self> {
        let block = ExteriorBlock::new(d, w);
        let upper = ExteriorBlock::new(d + 1, w);
        let n = block.len();
        let complement = if d == 0 { Vec::new() } else { select_independent(block.boundary_rows(&ExteriorBlock::new(d - 1, w)))? };
        let up_rows = upper.boundary_rows(&block);
        let lifts = select_independent(up_rows.clone())?;
        let n_h = n - complement.len() - lifts.len();
        let mut cycles = Vec::new();
        if n_h > 0 {
            let mut e: Echelon<Rational> = Echelon::new();
            for &s in &lifts {
                e.insert(convert(up_rows[s].clone()))?;
            }
            let kernel = if d == 0 {
                (0..n).map(|i| vec![(i, Rational::one())]).collect()
            } else {
                let lower = ExteriorBlock::new(d - 1, w);
                let rows = block.boundary_rows(&lower);
                let trip = rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&(c, v)| (c, i, Rational::from_int(v))));
                SparseMatrix::from_triplets(lower.len(), n, trip)?.kernel()?
            };
            for z in kernel {
                if e.insert(z.clone())?.is_some() {
                    cycles.push(z);
                }
            }
        }
        debug_assert_eq!(cycles.len(), n_h);
        // columns of T: complement basis vectors, boundaries of lifts, cycles
        let mut t = vec![vec![Rational::zero(); n]; n];
        let mut col = 0;
        for &c in &complement {
            t[c][col] = Rational::one();
            col += 1;
        }
        for &s in &lifts {
            for &(r, v) in &up_rows[s] {
                t[r][col] = Rational::from_int(v);
            }
            col += 1;
        }
        for z in &cycles {
            for (r, v) in z {
                t[*r][col] = v.clone();
            }
            col += 1;
        }
        let inv = invert_dense(&t)?;
        let inverse = (0..n).map(|c| (0..n).filter(|&r| !inv[r][c].is_zero()).map(|r| (r, inv[r][c].clone())).collect()).collect();
        Ok(Retract { block, upper, n_c: complement.len(), lifts, cycles, inverse })
    }

    pub fn homology_dim(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle(&self, l: usize) -> &SparseVec<Rational> {
        &self.cycles[l]
    }

    /// Splits `x` into its `h` image (in the block above) and its `pi`
    /// coordinates.
    fn split(&self, x: &BTreeMap<usize, Rational>) -> (BTreeMap<usize, Rational>, BTreeMap<usize, Rational>) {
        let mut coords: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in x {
            for (r, a) in &self.inverse[*c] {
                let e = coords.entry(*r).or_default();
                *e += &(v * a);
            }
        }
        let n_b = self.lifts.len();
        let mut h = BTreeMap::new();
        let mut pi = BTreeMap::new();
        for (r, v) in coords {
            if v.is_zero() || r < self.n_c {
                continue;
            }
            if r < self.n_c + n_b {
                h.insert(self.lifts[r - self.n_c], v);
            } else {
                pi.insert(r - self.n_c - n_b, v);
            }
        }
        (h, pi)
    }
}

fn retract_cache() -> &'static Mutex<HashMap<(usize, i64), Arc<Retract>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, i64), Arc<Retract>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn homology_cache() -> &'static Mutex<HashMap<(usize, i64), usize>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, i64), usize>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The (shared, memoized) retract of `Lambda^d_w`.
pub fn retract(d: usize, w: i64) -> Result<Arc<Retract>> {
    if let Some(r) = retract_cache().lock().expect("cache poisoned").get(&(d, w)) {
        return Ok(r.clone());
    }
    let r = Arc::new(Retract::new(d, w)?);
    retract_cache().lock().expect("cache poisoned").insert((d, w), r.clone());
    Ok(r)
}

/// Exact homology dimension of `Lambda^d_w` (trivial coefficients). The
/// modular count bounds it from above, so blocks that vanish modulo the
/// prime are settled without rational elimination.
pub fn exterior_homology_dim(d: usize, w: i64) -> Result<usize> {
    if let Some(&h) = homology_cache().lock().expect("cache poisoned").get(&(d, w)) {
        return Ok(h);
    }
    let h = match block_homology_mod_p(d, w)? {
        0 => 0,
        _ => retract(d, w)?.homology_dim(),
    };
    homology_cache().lock().expect("cache poisoned").insert((d, w), h);
    Ok(h)
}

type Element = BTreeMap<(i64, Tuple), Rational>;

/// The lowering part `t` of the boundary.
fn lower(v: &Element) -> Element {
    let mut out: Element = BTreeMap::new();
    for ((j, g), a) in v {
        boundary_terms(*j, g, |jj, args, c| {
            if jj == *j || c == 0 {
                return;
            }
            let (s, t) = sort_with_sign(args);
            if s == 0 {
                return;
            }
            let e = out.entry((jj, t)).or_default();
            *e += &(a * &Rational::from_int(s as i64 * c));
        });
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Generator of the small complex: homology class `l` of the exterior
/// block at dual index `j`.
pub type Generator = (i64, usize);

/// The small complex of weight `k`.
#[derive(Clone, Copy, Debug)]
pub struct SmallComplex {
    pub k: i64,
}

impl SmallComplex {
    pub fn new(k: i64) -> Self {
        SmallComplex { k }
    }

    /// Generators of degree `q` with dual index `<= cutoff`, highest dual
    /// index first.
    pub fn generators(&self, q: usize, cutoff: i64) -> Result<Vec<Generator>> {
        let mut out = Vec::new();
        for j in (1..=cutoff).rev() {
            for l in 0..exterior_homology_dim(q, self.k + j)? {
                out.push((j, l));
            }
        }
        Ok(out)
    }

    fn include(&self, q: usize, g: Generator) -> Result<Element> {
        let r = retract(q, self.k + g.0)?;
        Ok(r.cycle(g.1).iter().map(|(i, v)| ((g.0, r.block.basis()[*i].clone()), v.clone())).collect())
    }

    /// Runs the perturbation series from `iota(g)`; returns `D g` and the
    /// lifted chain `sum (-h t)^n iota g`.
    fn perturb(&self, q: usize, g: Generator) -> Result<(BTreeMap<Generator, Rational>, Element)> {
        let mut v = self.include(q, g)?;
        let mut lifted = v.clone();
        let mut image: BTreeMap<Generator, Rational> = BTreeMap::new();
        while !v.is_empty() {
            let u = lower(&v);
            let mut levels: BTreeMap<i64, BTreeMap<usize, Rational>> = BTreeMap::new();
            for ((j, t), a) in u {
                let r = retract(q - 1, self.k + j)?;
                let idx = r.block.index_of(&t).expect("weight preserved");
                levels.entry(j).or_default().insert(idx, a);
            }
            let mut next: Element = BTreeMap::new();
            for (j, x) in levels {
                let r = retract(q - 1, self.k + j)?;
                let (h, pi) = r.split(&x);
                for (l, a) in pi {
                    *image.entry((j, l)).or_default() += &a;
                }
                for (s, a) in h {
                    next.insert((j, r.upper.basis()[s].clone()), -a);
                }
            }
            for (key, a) in &next {
                *lifted.entry(key.clone()).or_default() += a;
            }
            v = next;
        }
        image.retain(|_, v| !v.is_zero());
        lifted.retain(|_, v| !v.is_zero());
        Ok((image, lifted))
    }

    /// `D g` in the generators of degree `q - 1`.
    pub fn differential(&self, q: usize, g: Generator) -> Result<BTreeMap<Generator, Rational>> {
        if q == 0 {
            return Ok(BTreeMap::new());
        }
        Ok(self.perturb(q, g)?.0)
    }

    /// A chain of the full complex representing `g`; a cycle whenever
    /// `D g = 0`.
    pub fn lift(&self, q: usize, g: Generator) -> Result<ChainElement> {
        let lifted = if q == 0 { self.include(q, g)? } else { self.perturb(q, g)?.1 };
        ChainElement::from_terms(q, self.k, lifted.into_iter().map(|((j, t), a)| (j, t.to_vec(), a)))
    }

    fn rows(&self, q: usize, src: &[Generator], target: &[Generator]) -> Result<Vec<SparseVec<Rational>>> {
        let index: HashMap<Generator, usize> = target.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        src.iter()
            .map(|g| {
                let mut row: SparseVec<Rational> = self.differential(q, *g)?.into_iter().map(|(t, a)| (index[&t], a)).collect();
                row.sort_unstable_by_key(|e| e.0);
                Ok(row)
            })
            .collect()
    }

    /// `dim im(H_q(F_J) -> H_q(F_J'))`.
    pub fn image_dim(&self, q: usize, cutoff: i64, reference: i64) -> Result<usize> {
        let src = self.generators(q, cutoff)?;
        let rank_d = if q == 0 { 0 } else { rank_rows(self.rows(q, &src, &self.generators(q - 1, cutoff)?)?)?.rank() };
        let big = self.generators(q, reference)?;
        let above = big.iter().take_while(|g| g.0 > cutoff).count();
        let e = rank_rows(self.rows(q + 1, &self.generators(q + 1, reference)?, &big)?)?;
        let rank_proj = e.pivot_columns().iter().filter(|&&c| c < above).count();
        Ok(src.len() - rank_d - (e.rank() - rank_proj))
    }

    /// `dim H_q(F_J)`.
    pub fn naive_dim(&self, q: usize, cutoff: i64) -> Result<usize> {
        let src = self.generators(q, cutoff)?;
        let rank_d = if q == 0 { 0 } else { rank_rows(self.rows(q, &src, &self.generators(q - 1, cutoff)?)?)?.rank() };
        let rank_b = rank_rows(self.rows(q + 1, &self.generators(q + 1, cutoff)?, &src)?)?.rank();
        Ok(src.len() - rank_d - rank_b)
    }
}

fn rank_rows(rows: Vec<SparseVec<Rational>>) -> Result<Echelon<Rational>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r)?;
    }
    Ok(e)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::chain_boundary;

    #[test]
    fn exterior_homology_weights() {
        // trivial-coefficient homology sits in weights (3d^2 +- d)/2
        for d in 1..=3usize {
            for w in 1..=20i64 {
                let expected = usize::from([(3 * d * d - d) / 2, (3 * d * d + d) / 2].contains(&(w as usize)));
                assert_eq!(exterior_homology_dim(d, w).unwrap(), expected, "d={d} w={w}");
            }
        }
    }

    #[test]
    fn retract_identity() {
        for (d, w) in [(2usize, 7i64), (2, 9), (3, 12), (1, 3)] {
            let r = retract(d, w).unwrap();
            for i in 0..r.block.len() {
                let x = BTreeMap::from([(i, Rational::one())]);
                let (h, pi) = r.split(&x);
                // d0 h x + h d0 x + iota pi x = x
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (s, a) in &h {
                    boundary_terms(0, &r.upper.basis()[*s], |_, args, c| {
                        let (sg, t) = sort_with_sign(args);
                        if sg != 0 {
                            *acc.entry(r.block.index_of(&t).unwrap()).or_default() += &(a * &Rational::from_int(sg as i64 * c));
                        }
                    });
                }
                if d > 0 {
                    let lower = retract(d - 1, w).unwrap();
                    let mut dx: BTreeMap<usize, Rational> = BTreeMap::new();
                    boundary_terms(0, &r.block.basis()[i], |_, args, c| {
                        let (sg, t) = sort_with_sign(args);
                        if sg != 0 {
                            *dx.entry(lower.block.index_of(&t).unwrap()).or_default() += &Rational::from_int(sg as i64 * c);
                        }
                    });
                    let (h2, _) = lower.split(&dx);
                    for (s, a) in h2 {
                        *acc.entry(s).or_default() += &a;
                    }
                }
                for (l, a) in pi {
                    for (c, v) in r.cycle(l) {
                        *acc.entry(*c).or_default() += &(&a * v);
                    }
                }
                acc.retain(|_, v| !v.is_zero());
                assert_eq!(acc, x, "d={d} w={w} i={i}");
            }
        }
    }

    #[test]
    fn small_differential_squares_to_zero() {
        let m = SmallComplex::new(3);
        for g in m.generators(3, 14).unwrap() {
            let dg = m.differential(3, g).unwrap();
            let mut acc: BTreeMap<Generator, Rational> = BTreeMap::new();
            for (h, a) in dg {
                for (t, b) in m.differential(2, h).unwrap() {
                    *acc.entry(t).or_default() += &(&a * &b);
                }
            }
            assert!(acc.values().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn lifted_cycles_are_cycles() {
        let m = SmallComplex::new(2);
        for g in m.generators(2, 8).unwrap() {
            if m.differential(2, g).unwrap().is_empty() {
                assert!(chain_boundary(&m.lift(2, g).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn agrees_with_full_slices() {
        use super::super::complex::{chain_image_dim, chain_naive_dim};
        for q in 1..=3 {
            for k in 0..=7 {
                let m = SmallComplex::new(k);
                assert_eq!(m.image_dim(q, k + 4, k + 10).unwrap(), chain_image_dim::<Fp>(q, k, k + 4, k + 10).unwrap(), "q={q} k={k}");
                assert_eq!(m.naive_dim(q, k + 6).unwrap(), chain_naive_dim::<Fp>(q, k, k + 6).unwrap(), "q={q} k={k}");
            }
        }
    }
}
