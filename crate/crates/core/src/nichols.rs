//! The Nichols algebra engine.
//!
//! A braided vector space is realized inside the quantum shuffle algebra on
//! T(V): elements are sparse vectors indexed by words over the module basis,
//! the product is the braided shuffle, and the Nichols algebra is the
//! subalgebra generated in degree one. Dimensions are computed degree by
//! degree as ranks of `{b * x_i}` over the previous level; the Woronowicz
//! symmetrizer is kept as an independent low-degree oracle.

use std::collections::BTreeMap;

use serde_json::json;

use crate::cyclotomic::{CycScalar, Nq};
use crate::error::Error;
use crate::linalg::{RowBasis, SparseVec};
use crate::ydmod::{BraidingMatrix, YdModule};

/// Words pack 3 bits per letter, so degrees up to 21 fit in a u64.
pub const MAX_DEGREE: usize = 21;

fn wget(w: u64, p: usize) -> usize {
    ((w >> (3 * p)) & 7) as usize
}

fn wset(w: u64, p: usize, letter: usize) -> u64 {
    (w & !(7u64 << (3 * p))) | ((letter as u64) << (3 * p))
}

type Coords = BTreeMap<u64, CycScalar>;

fn coords_add(acc: &mut Coords, w: u64, v: CycScalar) {
    if v.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(w) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// The braiding as an operator datum: for each ordered basis pair `(a, b)`,
/// the expansion of `c(x_a (x) x_b)` over pairs `(c, d)`.
#[derive(Clone, Debug)]
pub struct BraidingOp {
    pub dim: usize,
    outputs: Vec<Vec<((usize, usize), CycScalar)>>,
}

impl BraidingOp {
    pub fn from_diagonal(bm: &BraidingMatrix) -> BraidingOp {
        let dim = bm.dim;
        let mut outputs = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                outputs.push(vec![((b, a), bm.entry(a, b).clone())]);
            }
        }
        BraidingOp { dim, outputs }
    }

    pub fn from_module(v: &YdModule) -> BraidingOp {
        let dim = v.dim;
        let mut outputs = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            let act = &v.action[v.degree[a]];
            for b in 0..dim {
                let mut terms = Vec::new();
                for c in 0..dim {
                    let coeff = act.at(c, b);
                    if !coeff.is_zero() {
                        terms.push(((c, a), coeff.clone()));
                    }
                }
                outputs.push(terms);
            }
        }
        BraidingOp { dim, outputs }
    }

    fn apply_slot(&self, v: &Coords, s: usize) -> Coords {
        let mut out = Coords::new();
        for (&w, coeff) in v {
            let a = wget(w, s);
            let b = wget(w, s + 1);
            for ((c, d), bc) in &self.outputs[a * self.dim + b] {
                let w2 = wset(wset(w, s, *c), s + 1, *d);
                let mut t = coeff.clone();
                t.mul_assign_ref(bc);
                coords_add(&mut out, w2, t);
            }
        }
        out
    }

    /// Checks the braid equation on all length-3 basis words.
    pub fn satisfies_braid_equation(&self) -> bool {
        let d = self.dim;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let w = wset(wset(wset(0, 0, a), 1, b), 2, c);
                    let mut v = Coords::new();
                    v.insert(w, CycScalar::one());
                    let lhs = self.apply_slot(&self.apply_slot(&self.apply_slot(&v, 0), 1), 0);
                    let rhs = self.apply_slot(&self.apply_slot(&self.apply_slot(&v, 1), 0), 1);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A homogeneous element of T(V) in the shuffle realization.
#[derive(Clone, Debug, PartialEq)]
pub struct ShuffleElement {
    pub dim: usize,
    pub degree: usize,
    pub coords: Coords,
}

impl ShuffleElement {
    pub fn unit(dim: usize) -> Self {
        let mut coords = Coords::new();
        coords.insert(0, CycScalar::one());
        ShuffleElement {
            dim,
            degree: 0,
            coords,
        }
    }

    pub fn letter(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut coords = Coords::new();
        coords.insert(i as u64, CycScalar::one());
        ShuffleElement {
            dim,
            degree: 1,
            coords,
        }
    }

    pub fn from_word(dim: usize, letters: &[usize]) -> Self {
        let mut w = 0u64;
        for (p, &l) in letters.iter().enumerate() {
            assert!(l < dim);
            w = wset(w, p, l);
        }
        let mut coords = Coords::new();
        coords.insert(w, CycScalar::one());
        ShuffleElement {
            dim,
            degree: letters.len(),
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        ShuffleElement {
            dim,
            degree,
            coords: Coords::new(),
        }
    }

    pub fn add_assign(&mut self, other: &ShuffleElement) {
        assert_eq!(self.degree, other.degree);
        for (&w, v) in &other.coords {
            coords_add(&mut self.coords, w, v.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &ShuffleElement) {
        assert_eq!(self.degree, other.degree);
        for (&w, v) in &other.coords {
            coords_add(&mut self.coords, w, -v.clone());
        }
    }

    pub fn scale(&mut self, f: &CycScalar) {
        if f.is_zero() {
            self.coords.clear();
            return;
        }
        for v in self.coords.values_mut() {
            v.mul_assign_ref(f);
        }
    }

    pub fn coeff(&self, letters: &[usize]) -> CycScalar {
        let mut w = 0u64;
        for (p, &l) in letters.iter().enumerate() {
            w = wset(w, p, l);
        }
        self.coords.get(&w).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn to_sparse(&self) -> SparseVec<CycScalar> {
        SparseVec::from_entries(self.coords.iter().map(|(&w, v)| (w, v.clone())).collect())
    }

    pub fn from_sparse(dim: usize, degree: usize, row: &SparseVec<CycScalar>) -> Self {
        ShuffleElement {
            dim,
            degree,
            coords: row.entries.iter().map(|(w, v)| (*w, v.clone())).collect(),
        }
    }

    fn from_coords(dim: usize, degree: usize, coords: Coords) -> Self {
        ShuffleElement {
            dim,
            degree,
            coords,
        }
    }
}

/// `u * x_i` in the shuffle algebra: the letter is inserted at every
/// position, braided past the tail. The insertion sums share work, so this
/// is `O(degree * nnz)` braiding applications.
pub fn shuffle_right_letter(u: &ShuffleElement, letter: usize, op: &BraidingOp) -> ShuffleElement {
    let n = u.degree;
    assert!(n + 1 <= MAX_DEGREE);
    let mut cur: Coords = u
        .coords
        .iter()
        .map(|(&w, v)| (wset(w, n, letter), v.clone()))
        .collect();
    let mut acc = cur.clone();
    for s in (0..n).rev() {
        cur = op.apply_slot(&cur, s);
        for (&w, v) in &cur {
            coords_add(&mut acc, w, v.clone());
        }
    }
    ShuffleElement::from_coords(u.dim, n + 1, acc)
}

/// The braided shuffle product: the sum over interleavings of the braided
/// lifts moving the right factor's letters into place (any reduced word
/// gives the same lift, by the braid equation).
pub fn shuffle_product(u: &ShuffleElement, v: &ShuffleElement, op: &BraidingOp) -> ShuffleElement {
    assert_eq!(u.dim, v.dim);
    let (m, n) = (u.degree, v.degree);
    assert!(m + n <= MAX_DEGREE);
    if n == 0 {
        let mut out = u.clone();
        let unit_coeff = v.coords.get(&0).cloned().unwrap_or_else(CycScalar::zero);
        out.scale(&unit_coeff);
        return out;
    }
    if n == 1 {
        // single-letter right factors expand over letters
        let mut out = ShuffleElement::zero(u.dim, m + 1);
        for (&w, coeff) in &v.coords {
            let letter = wget(w, 0);
            let mut t = shuffle_right_letter(u, letter, op);
            t.scale(coeff);
            out.add_assign(&t);
        }
        return out;
    }
    // base = u (x) v
    let mut base = Coords::new();
    for (&wu, cu) in &u.coords {
        for (&wv, cv) in &v.coords {
            let w = wu | (wv << (3 * m));
            let mut t = cu.clone();
            t.mul_assign_ref(cv);
            coords_add(&mut base, w, t);
        }
    }
    let total = m + n;
    let mut acc = Coords::new();
    // choose final positions t_0 < ... < t_(n-1) for the right factor's
    // letters; letter j moves from slot position m+j down to t_j
    let mut positions: Vec<usize> = (0..n).collect();
    loop {
        // apply the canonical braided lift for this interleaving
        let mut cur = base.clone();
        for (j, &tj) in positions.iter().enumerate() {
            let start = m + j;
            for s in (tj..start).rev() {
                cur = op.apply_slot(&cur, s);
            }
        }
        for (&w, vv) in &cur {
            coords_add(&mut acc, w, vv.clone());
        }
        // next increasing n-subset of 0..total
        let mut k = n;
        loop {
            if k == 0 {
                return ShuffleElement::from_coords(u.dim, total, acc);
            }
            k -= 1;
            positions[k] += 1;
            if positions[k] <= total - (n - k) {
                for j in (k + 1)..n {
                    positions[j] = positions[j - 1] + 1;
                }
                break;
            }
            if k == 0 {
                return ShuffleElement::from_coords(u.dim, total, acc);
            }
        }
    }
}

/// The skew derivation `d_i`: deconcatenation of the last tensor factor
/// paired against the dual basis vector.
pub fn derivation(z: &ShuffleElement, i: usize) -> ShuffleElement {
    if z.degree == 0 {
        return ShuffleElement::zero(z.dim, 0);
    }
    let n = z.degree - 1;
    let mut coords = Coords::new();
    for (&w, v) in &z.coords {
        if wget(w, n) == i {
            let prefix = w & !(7u64 << (3 * n));
            coords_add(&mut coords, prefix, v.clone());
        }
    }
    ShuffleElement::from_coords(z.dim, n, coords)
}

/// The braided adjoint of a degree-1 element: `Ad_x(y) = mu (id - c) (x (x) y)`.
pub fn adjoint(x: &ShuffleElement, y: &ShuffleElement, op: &BraidingOp) -> ShuffleElement {
    assert_eq!(x.degree, 1);
    let mut out = shuffle_product(x, y, op);
    // c(x (x) y): braid the first letter to the end, then multiply the split
    let mut moved = Coords::new();
    for (&wx, cx) in &x.coords {
        for (&wy, cy) in &y.coords {
            let w = wx | (wy << 3);
            let mut t = cx.clone();
            t.mul_assign_ref(cy);
            coords_add(&mut moved, w, t);
        }
    }
    for s in 0..y.degree {
        moved = op.apply_slot(&moved, s);
    }
    let n = y.degree;
    for (&w, v) in &moved {
        let prefix_word = w & !(7u64 << (3 * n));
        let letter = wget(w, n);
        let mut prefix = ShuffleElement::from_coords(x.dim, n, {
            let mut c = Coords::new();
            c.insert(prefix_word, CycScalar::one());
            c
        });
        prefix = shuffle_right_letter(&prefix, letter, op);
        prefix.scale(v);
        out.sub_assign(&prefix);
    }
    out
}

/// Diagonal group action `g_i . z` used by the Leibniz rule: each letter `j`
/// contributes `b_ij`.
pub fn act_diagonal(bm: &BraidingMatrix, i: usize, z: &ShuffleElement) -> ShuffleElement {
    let mut out = ShuffleElement::zero(z.dim, z.degree);
    for (&w, v) in &z.coords {
        let mut f = CycScalar::one();
        for p in 0..z.degree {
            f.mul_assign_ref(bm.entry(i, wget(w, p)));
        }
        f.mul_assign_ref(v);
        coords_add(&mut out.coords, w, f);
    }
    out
}

/// Rank of the degree-n Woronowicz symmetrizer, the independent oracle for
/// the degree-n dimension: the sum over all permutations of their braided
/// lifts, each lift built from one reduced word (any choice gives the same
/// operator, by the braid equation).
pub fn symmetrizer_rank(op: &BraidingOp, n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let dim = op.dim;
    let words: Vec<u64> = {
        let mut out = vec![0u64];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * dim);
            for w in &out {
                for l in 0..dim {
                    next.push((w << 3) | l as u64);
                }
            }
            out = next;
        }
        out
    };
    let reduced_words = reduced_words_of_all_permutations(n);
    let mut basis: RowBasis<CycScalar> = RowBasis::new();
    for &w in &words {
        let mut base = Coords::new();
        base.insert(w, CycScalar::one());
        let mut acc = Coords::new();
        for word in &reduced_words {
            let mut cur = base.clone();
            for &s in word {
                cur = op.apply_slot(&cur, s);
            }
            for (&ww, val) in &cur {
                coords_add(&mut acc, ww, val.clone());
            }
        }
        let row = SparseVec::from_entries(acc.into_iter().collect());
        basis.insert(row);
    }
    basis.rank()
}

/// One reduced word (bubble-sort transcript, slot indices) per permutation.
fn reduced_words_of_all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perms = vec![vec![0usize]];
    for k in 2..=n {
        let mut next = Vec::with_capacity(perms.len() * k);
        for p in &perms {
            for pos in 0..k {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                next.push(q);
            }
        }
        perms = next;
    }
    perms
        .into_iter()
        .map(|p| {
            let mut q = p;
            let mut word = Vec::new();
            loop {
                match (0..q.len() - 1).find(|&s| q[s] > q[s + 1]) {
                    Some(s) => {
                        q.swap(s, s + 1);
                        word.push(s);
                    }
                    None => break,
                }
            }
            word
        })
        .collect()
}

/// Totals are exact or flagged once the cumulative dimension passes the
/// budget (or the degree cap is hit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Total {
    Finite(u32),
    Exceeded { budget: u32, reached: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Finite(u32),
    Exceeded(u32),
}

/// Dimension data of a Nichols algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct NicholsReport {
    pub dim_v: usize,
    pub hilbert: Vec<u32>,
    pub total: Total,
    pub top_degree: Option<usize>,
    pub nilpotency: BTreeMap<String, Nilpotency>,
    pub qls: Option<u32>,
    pub cartan: Option<Vec<Vec<i64>>>,
}

impl NicholsReport {
    pub fn total_value(&self) -> Option<u32> {
        match self.total {
            Total::Finite(n) => Some(n),
            Total::Exceeded { .. } => None,
        }
    }

    pub fn is_palindromic(&self) -> bool {
        match self.total {
            Total::Exceeded { .. } => true, // nothing to check
            Total::Finite(_) => {
                let h = &self.hilbert;
                (0..h.len()).all(|k| h[k] == h[h.len() - 1 - k])
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let total = match &self.total {
            Total::Finite(n) => json!(n),
            Total::Exceeded { budget, .. } => json!(format!("exceeds {budget}")),
        };
        let nil: BTreeMap<String, serde_json::Value> = self
            .nilpotency
            .iter()
            .map(|(k, v)| {
                let val = match v {
                    Nilpotency::Finite(n) => json!(n),
                    Nilpotency::Exceeded(c) => json!(format!("exceeds {c}")),
                };
                (k.clone(), val)
            })
            .collect();
        json!({
            "hilbert": self.hilbert,
            "total": total,
            "top_degree": self.top_degree,
            "nilpotency": nil,
            "qls": self.qls,
            "cartan": self.cartan,
        })
    }
}

/// One graded level of the growth computation.
pub struct GrowthLevel {
    pub basis: RowBasis<CycScalar>,
}

pub struct Growth {
    pub hilbert: Vec<u32>,
    pub total: Total,
    pub top_degree: Option<usize>,
    pub levels: Vec<GrowthLevel>,
}

/// Grows the subalgebra of the shuffle algebra generated by the letters,
/// one degree at a time.
pub fn grow(op: &BraidingOp, degree_cap: usize, dim_budget: u32) -> Growth {
    let dim = op.dim;
    let mut hilbert = vec![1u32];
    let mut levels = Vec::new();
    {
        let mut b = RowBasis::new();
        b.insert(ShuffleElement::unit(dim).to_sparse());
        levels.push(GrowthLevel { basis: b });
    }
    let mut elements: Vec<ShuffleElement> = vec![ShuffleElement::unit(dim)];
    let mut cumulative = 1u64;
    let cap = degree_cap.min(MAX_DEGREE - 1);
    for _d in 1..=cap {
        let mut next_elems = Vec::new();
        let mut basis = RowBasis::new();
        for e in &elements {
            for i in 0..dim {
                let cand = shuffle_right_letter(e, i, op);
                if basis.insert(cand.to_sparse()) {
                    next_elems.push(cand);
                }
            }
        }
        let count = next_elems.len() as u32;
        if count == 0 {
            let total: u32 = hilbert.iter().sum();
            let top = hilbert.len() - 1;
            return Growth {
                hilbert,
                total: Total::Finite(total),
                top_degree: Some(top),
                levels,
            };
        }
        hilbert.push(count);
        levels.push(GrowthLevel { basis });
        cumulative += count as u64;
        if cumulative > dim_budget as u64 {
            return Growth {
                hilbert,
                total: Total::Exceeded {
                    budget: dim_budget,
                    reached: cumulative.min(u32::MAX as u64) as u32,
                },
                top_degree: None,
                levels,
            };
        }
        elements = next_elems;
    }
    Growth {
        hilbert,
        total: Total::Exceeded {
            budget: dim_budget,
            reached: cumulative.min(u32::MAX as u64) as u32,
        },
        top_degree: None,
        levels,
    }
}

/// Least `k` with the k-th shuffle power zero, or `Exceeded` past the cap.
pub fn nilpotency_order(
    op: &BraidingOp,
    w: &ShuffleElement,
    growth: &Growth,
    cap: u32,
) -> Nilpotency {
    if w.is_zero() {
        return Nilpotency::Finite(1);
    }
    let d = w.degree.max(1);
    let mut power = w.clone();
    let mut k = 1u32;
    loop {
        if power.is_zero() {
            return Nilpotency::Finite(k);
        }
        // the whole degree component may already vanish
        if let Some(top) = growth.top_degree {
            if (k as usize + 1) * d > top {
                return Nilpotency::Finite(k + 1);
            }
        }
        if k >= cap || (k as usize + 1) * d > MAX_DEGREE {
            return Nilpotency::Exceeded(cap);
        }
        power = shuffle_product(&power, w, op);
        k += 1;
    }
}

/// The quantum-linear-space criterion: the product of the diagonal orders
/// when all off-diagonal products `b_ij b_ji` are 1 and all orders finite.
pub fn qls_check(bm: &BraidingMatrix) -> Option<u32> {
    for i in 0..bm.dim {
        for j in 0..bm.dim {
            if i != j {
                let mut p = bm.entry(i, j).clone();
                p.mul_assign_ref(bm.entry(j, i));
                if !p.is_one() {
                    return None;
                }
            }
        }
    }
    let mut prod = 1u32;
    for k in 0..bm.dim {
        match bm.entry(k, k).nq() {
            Nq::Finite(n) => prod *= n,
            Nq::Infinite => return None,
        }
    }
    Some(prod)
}

/// The generalized Cartan matrix when one exists under the normalization
/// `a_ii = 2`, `-ord(b_ii) < a_ij <= 0`.
pub fn cartan_type(bm: &BraidingMatrix) -> Option<Vec<Vec<i64>>> {
    let d = bm.dim;
    let mut a = vec![vec![0i64; d]; d];
    for i in 0..d {
        a[i][i] = 2;
        let ord = match bm.entry(i, i).nq() {
            Nq::Finite(n) => n as i64,
            Nq::Infinite => return None,
        };
        for j in 0..d {
            if i == j {
                continue;
            }
            let mut target = bm.entry(i, j).clone();
            target.mul_assign_ref(bm.entry(j, i));
            let mut found = None;
            for e in 0..ord {
                // candidate exponent a_ij = -e
                let mut p = CycScalar::one();
                for _ in 0..((ord - e) % ord) {
                    p.mul_assign_ref(bm.entry(i, i));
                }
                // p = b_ii^(-e) since b_ii^ord = 1
                if p == target {
                    found = Some(-e);
                    break;
                }
            }
            a[i][j] = found?;
        }
    }
    Some(a)
}

/// Full report for a diagonal braiding matrix.
pub fn nichols_dimensions(
    bm: &BraidingMatrix,
    degree_cap: usize,
    dim_budget: u32,
) -> Result<NicholsReport, Error> {
    let op = BraidingOp::from_diagonal(bm);
    report_for_op(&op, Some(bm), degree_cap, dim_budget)
}

/// Full report for a module braiding (diagonal data used when available).
pub fn nichols_dimensions_module(
    v: &YdModule,
    degree_cap: usize,
    dim_budget: u32,
) -> Result<NicholsReport, Error> {
    let op = BraidingOp::from_module(v);
    let bm = v.diagonal_matrix();
    report_for_op(&op, bm.as_ref(), degree_cap, dim_budget)
}

fn letter_name(dim: usize, i: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

pub fn report_for_op(
    op: &BraidingOp,
    bm: Option<&BraidingMatrix>,
    degree_cap: usize,
    dim_budget: u32,
) -> Result<NicholsReport, Error> {
    if !op.satisfies_braid_equation() {
        return Err(Error::BraidEquationFailed);
    }
    let growth = grow(op, degree_cap, dim_budget);
    let mut nilpotency = BTreeMap::new();
    if matches!(growth.total, Total::Finite(_)) {
        let cap = 64;
        for i in 0..op.dim {
            let x = ShuffleElement::letter(op.dim, i);
            nilpotency.insert(
                format!("|{}|", letter_name(op.dim, i)),
                nilpotency_order(op, &x, &growth, cap),
            );
        }
        if op.dim == 2 {
            let x = ShuffleElement::letter(2, 0);
            let y = ShuffleElement::letter(2, 1);
            let ad_xy = adjoint(&x, &y, op);
            if !ad_xy.is_zero() {
                nilpotency.insert(
                    "|ad_x(y)|".to_string(),
                    nilpotency_order(op, &ad_xy, &growth, cap),
                );
            }
            let ad_yx = adjoint(&y, &x, op);
            if !ad_yx.is_zero() {
                nilpotency.insert(
                    "|ad_y(x)|".to_string(),
                    nilpotency_order(op, &ad_yx, &growth, cap),
                );
            }
        }
    }
    let (qls, cartan) = match bm {
        Some(b) => (qls_check(b), cartan_type(b)),
        None => (None, None),
    };
    Ok(NicholsReport {
        dim_v: op.dim,
        hilbert: growth.hilbert,
        total: growth.total,
        top_degree: growth.top_degree,
        nilpotency,
        qls,
        cartan,
    })
}

/// The paired matrices of the rank-2 braidings the classification needs,
/// keyed the way the reference tables name them. Used by goldens and tests.
pub fn named_matrix(name: &str) -> Result<BraidingMatrix, Error> {
    let m1 = CycScalar::minus_one;
    let one = CycScalar::one;
    let i = CycScalar::i;
    let rows = match name {
        "b1_1" => vec![vec![m1(), one()], vec![one(), m1()]],
        "b1_-1" => vec![vec![m1(), m1()], vec![m1(), m1()]],
        "b1_i" => vec![vec![m1(), -i()], vec![i(), m1()]],
        "b1_-i" => vec![vec![m1(), i()], vec![-i(), m1()]],
        "b2" => vec![vec![m1(), m1()], vec![one(), m1()]],
        "b3_++" => vec![vec![m1(), one()], vec![i(), m1()]],
        "b3_-+" => vec![vec![m1(), one()], vec![-i(), m1()]],
        "b3_+-" => vec![vec![m1(), m1()], vec![i(), m1()]],
        "b3_--" => vec![vec![m1(), m1()], vec![-i(), m1()]],
        "b4_+" => vec![vec![i(), i()], vec![m1(), m1()]],
        "b4_-" => vec![vec![-i(), -i()], vec![m1(), m1()]],
        "b5_+" => vec![vec![i(), -i()], vec![m1(), m1()]],
        "b5_-" => vec![vec![-i(), i()], vec![m1(), m1()]],
        "b6_1" => vec![vec![m1(), one()], vec![CycScalar::xi(), m1()]],
        "b6_3" => vec![vec![m1(), one()], vec![CycScalar::xi().pow(3), m1()]],
        "b6_5" => vec![vec![m1(), one()], vec![CycScalar::xi().pow(5), m1()]],
        "b6_7" => vec![vec![m1(), one()], vec![CycScalar::xi().pow(7), m1()]],
        _ => return Err(Error::BadMatrix(format!("unknown matrix name {name:?}"))),
    };
    BraidingMatrix::from_rows(rows)
}
