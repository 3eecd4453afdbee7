//! Yetter-Drinfeld modules over group algebras: induced modules, braidings,
//! diagonal-type extraction, automorphism twists and orbit classification of
//! direct sums up to bosonization isomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use crate::cyclotomic::{CycScalar, Nq};
use crate::error::Error;
use crate::groups::{Character, FinGroup, GroupMap};
use crate::matrix::Mat;

/// The representation datum of an induced module `M(g, rho)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InducedRep {
    /// A character of the centralizer of `g`; values indexed by the
    /// centralizer's element list (sorted parent indices).
    Char(Character),
    /// The catalogued degree-2 irreducible representation of the full group
    /// (requires `g` central).
    Irrep2,
}

/// A graded module with group action; the degree map is the comodule
/// structure `delta(x_b) = degree[b] (x) x_b`.
#[derive(Clone, Debug)]
pub struct YdModule {
    pub group: Arc<FinGroup>,
    pub dim: usize,
    pub degree: Vec<usize>,
    /// per group element `h`, the matrix of `h` acting on the basis
    /// (column `b` holds the coefficients of `h . x_b`)
    pub action: Vec<Mat>,
    pub summands: Vec<(usize, InducedRep)>,
}

/// Matrix of a diagonal-type braiding: `c(x_i (x) x_j) = b_ij x_j (x) x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingMatrix {
    pub dim: usize,
    pub entries: Mat,
    pub labels: Vec<String>,
}

impl BraidingMatrix {
    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Result<Self, Error> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadMatrix("matrix is not square".into()));
        }
        let entries = Mat::from_rows(rows);
        for i in 0..dim {
            for j in 0..dim {
                if entries.at(i, j).as_root_of_unity().is_none() {
                    return Err(Error::BadMatrix(format!(
                        "entry ({i},{j}) is not a nonzero root of unity"
                    )));
                }
            }
        }
        let labels = (0..dim).map(|k| format!("x{}", k + 1)).collect();
        Ok(BraidingMatrix {
            dim,
            entries,
            labels,
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycScalar {
        self.entries.at(i, j)
    }

    /// Canonical key: the grid of root-of-unity exponents.
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.push(self.entry(i, j).as_root_of_unity().expect("root of unity"));
            }
        }
        out
    }

    /// Product of the orders of the diagonal entries, when all finite.
    pub fn qls_lower_bound(&self) -> Nq {
        let mut prod: u64 = 1;
        for k in 0..self.dim {
            match self.entry(k, k).nq() {
                Nq::Finite(n) => prod *= n as u64,
                Nq::Infinite => return Nq::Infinite,
            }
        }
        Nq::Finite(prod.min(u32::MAX as u64) as u32)
    }
}

/// Canonical isomorphism-class label of an irreducible summand, minimized
/// over conjugation transports.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonLabel {
    Char { g: usize, values: Vec<u8> },
    Irrep2 { g: usize },
}

impl YdModule {
    /// `M(g, rho) = kG (x)_{kG_g} W` with the coaction supported on the
    /// conjugacy class of `g`.
    pub fn build_induced(
        group: &Arc<FinGroup>,
        g: usize,
        rep: &InducedRep,
    ) -> Result<YdModule, Error> {
        let cent = group.centralizer(g);
        match rep {
            InducedRep::Char(chi) => {
                if chi.values.len() != cent.order() {
                    return Err(Error::NotARepresentation(format!(
                        "character has {} values, centralizer has order {}",
                        chi.values.len(),
                        cent.order()
                    )));
                }
                // left cosets h*cent, represented by their minimal element
                let mut coset_of = vec![usize::MAX; group.order];
                let mut reps = Vec::new();
                for h in 0..group.order {
                    if coset_of[h] != usize::MAX {
                        continue;
                    }
                    let idx = reps.len();
                    for &k in &cent.elements {
                        coset_of[group.mul(h, k)] = idx;
                    }
                    reps.push(h);
                }
                let dim = reps.len();
                let degree: Vec<usize> = reps.iter().map(|&r| group.conj(r, g)).collect();
                let mut action = Vec::with_capacity(group.order);
                for h in 0..group.order {
                    let mut m = Mat::zero(dim, dim);
                    for (b, &rb) in reps.iter().enumerate() {
                        let hr = group.mul(h, rb);
                        let j = coset_of[hr];
                        let gamma = group.mul(group.inv(reps[j]), hr);
                        let idx = cent.index_of(gamma).expect("gamma in centralizer");
                        *m.at_mut(j, b) = chi.value(idx);
                    }
                    action.push(m);
                }
                Ok(YdModule {
                    group: Arc::clone(group),
                    dim,
                    degree,
                    action,
                    summands: vec![(g, rep.clone())],
                })
            }
            InducedRep::Irrep2 => {
                if cent.order() != group.order {
                    return Err(Error::NotARepresentation(format!(
                        "element {} is not central in {}",
                        group.names[g], group.id
                    )));
                }
                let rho = group
                    .degree_two_irreps()?
                    .into_iter()
                    .next()
                    .expect("one catalogued irrep");
                let dim = rho.degree;
                Ok(YdModule {
                    group: Arc::clone(group),
                    dim,
                    degree: vec![g; dim],
                    action: rho.matrices,
                    summands: vec![(g, InducedRep::Irrep2)],
                })
            }
        }
    }

    pub fn direct_sum(parts: &[&YdModule]) -> YdModule {
        let group = Arc::clone(&parts[0].group);
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let mut degree = Vec::with_capacity(dim);
        let mut summands = Vec::new();
        for p in parts {
            assert!(Arc::ptr_eq(&group, &p.group) || group.id == p.group.id);
            degree.extend_from_slice(&p.degree);
            summands.extend(p.summands.iter().cloned());
        }
        let mut action = Vec::with_capacity(group.order);
        for h in 0..group.order {
            let mut m = Mat::zero(dim, dim);
            let mut off = 0;
            for p in parts {
                for r in 0..p.dim {
                    for c in 0..p.dim {
                        let v = p.action[h].at(r, c);
                        if !v.is_zero() {
                            *m.at_mut(off + r, off + c) = v.clone();
                        }
                    }
                }
                off += p.dim;
            }
            action.push(m);
        }
        YdModule {
            group,
            dim,
            degree,
            action,
            summands,
        }
    }

    /// The braiding `c(m (x) n) = m_(-1) . n (x) m_(0)` as a dense matrix on
    /// the pair basis; row/column index of `x_u (x) x_v` is `u*dim + v`.
    pub fn braiding(&self) -> Mat {
        let d = self.dim;
        let mut m = Mat::zero(d * d, d * d);
        for a in 0..d {
            let act = &self.action[self.degree[a]];
            for b in 0..d {
                for c in 0..d {
                    let v = act.at(c, b);
                    if !v.is_zero() {
                        *m.at_mut(c * d + a, a * d + b) = v.clone();
                    }
                }
            }
        }
        m
    }

    /// YD compatibility specialized to group algebras: `h . x_b` is
    /// supported on degrees `h deg(b) h^-1`.
    pub fn check_yd_compatibility(&self) -> bool {
        for h in 0..self.group.order {
            for b in 0..self.dim {
                let target = self.group.conj(h, self.degree[b]);
                for r in 0..self.dim {
                    if !self.action[h].at(r, b).is_zero() && self.degree[r] != target {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn check_is_representation(&self) -> bool {
        for a in 0..self.group.order {
            for b in 0..self.group.order {
                if self.action[a].mul(&self.action[b]) != self.action[self.group.mul(a, b)] {
                    return false;
                }
            }
        }
        self.action[0] == Mat::identity(self.dim)
    }

    /// Extracts the braiding matrix when the braiding is of diagonal type in
    /// the constructed basis. The basis produced by `build_induced` realizes
    /// the diagonal bases used throughout: characters over abelian groups,
    /// the basis `{x, t.x}` for an index-2 centralizer and `{x, rho(t)x}`
    /// for a central degree-2 summand.
    pub fn diagonal_matrix(&self) -> Option<BraidingMatrix> {
        let d = self.dim;
        let mut entries = Mat::zero(d, d);
        for a in 0..d {
            let act = &self.action[self.degree[a]];
            for b in 0..d {
                // need act * e_b = b_ab e_b
                for r in 0..d {
                    let v = act.at(r, b);
                    if r == b {
                        if v.is_zero() || v.as_root_of_unity().is_none() {
                            return None;
                        }
                        *entries.at_mut(a, b) = v.clone();
                    } else if !v.is_zero() {
                        return None;
                    }
                }
            }
        }
        let labels = (0..d)
            .map(|k| format!("x{} ({})", k + 1, self.group.names[self.degree[k]]))
            .collect();
        Some(BraidingMatrix {
            dim: d,
            entries,
            labels,
        })
    }

    /// The twisted module: degrees pushed forward along `f`, action pulled
    /// back along `f^-1`; `M(g, rho)^f = M(f(g), rho . f^-1)`.
    pub fn twist(&self, f: &GroupMap) -> YdModule {
        let finv = f.inverse();
        let degree = self.degree.iter().map(|&d| f.apply(d)).collect();
        let action = (0..self.group.order)
            .map(|h| self.action[finv.apply(h)].clone())
            .collect();
        let summands = self
            .summands
            .iter()
            .map(|(g, rep)| (f.apply(*g), twist_rep(&self.group, *g, rep, f)))
            .collect();
        YdModule {
            group: Arc::clone(&self.group),
            dim: self.dim,
            degree,
            action,
            summands,
        }
    }

    /// Canonical multiset of summand labels; two modules are isomorphic iff
    /// these agree.
    pub fn canonical_labels(&self) -> Vec<CanonLabel> {
        let mut labels: Vec<CanonLabel> = self
            .summands
            .iter()
            .map(|(g, rep)| canonical_label(&self.group, *g, rep))
            .collect();
        labels.sort();
        labels
    }

    pub fn isomorphic(&self, other: &YdModule) -> bool {
        self.group.id == other.group.id && self.canonical_labels() == other.canonical_labels()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let summands: Vec<_> = self
            .summands
            .iter()
            .map(|(g, rep)| match rep {
                InducedRep::Char(chi) => {
                    let cent = self.group.centralizer(*g);
                    let values: BTreeMap<String, String> = cent
                        .elements
                        .iter()
                        .enumerate()
                        .map(|(k, &e)| (self.group.names[e].clone(), chi.value(k).to_string()))
                        .collect();
                    json!({"h": self.group.names[*g], "rep": {"type": "character", "values": values}})
                }
                InducedRep::Irrep2 => {
                    json!({"h": self.group.names[*g], "rep": {"type": "irrep2"}})
                }
            })
            .collect();
        let diag = self.diagonal_matrix().map(|b| {
            (0..b.dim)
                .map(|i| {
                    (0..b.dim)
                        .map(|j| b.entry(i, j).to_string())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        });
        json!({
            "group": self.group.id,
            "dim": self.dim,
            "summands": summands,
            "braiding_matrix": diag,
        })
    }
}

fn twist_rep(group: &FinGroup, g: usize, rep: &InducedRep, f: &GroupMap) -> InducedRep {
    match rep {
        InducedRep::Irrep2 => InducedRep::Irrep2,
        InducedRep::Char(chi) => {
            let finv = f.inverse();
            let cent_old = group.centralizer(g);
            let cent_new = group.centralizer(f.apply(g));
            let values = cent_new
                .elements
                .iter()
                .map(|&h| {
                    let pre = finv.apply(h);
                    let idx = cent_old.index_of(pre).expect("f maps centralizers");
                    chi.exponent(idx)
                })
                .collect();
            InducedRep::Char(Character { values })
        }
    }
}

/// The label of `M(g, rho)` minimized over conjugation: the class
/// representative together with the lexicographically smallest transported
/// value vector.
pub fn canonical_label(group: &FinGroup, g: usize, rep: &InducedRep) -> CanonLabel {
    let class = group.class_of(g);
    let gmin = class[0];
    match rep {
        InducedRep::Irrep2 => CanonLabel::Irrep2 { g: gmin },
        InducedRep::Char(chi) => {
            if class.len() == 1 && chi.values.len() == group.order {
                // central element: all transports agree
                return CanonLabel::Char {
                    g: gmin,
                    values: chi.values.clone(),
                };
            }
            let cent_old = group.centralizer(g);
            let cent_new = group.centralizer(gmin);
            let mut best: Option<Vec<u8>> = None;
            for t in 0..group.order {
                if group.conj(t, g) != gmin {
                    continue;
                }
                // chi^t(h) = chi(t^-1 h t) for h in centralizer(gmin)
                let cand: Vec<u8> = cent_new
                    .elements
                    .iter()
                    .map(|&h| {
                        let pre = group.conj(group.inv(t), h);
                        let idx = cent_old.index_of(pre).expect("conjugate centralizer");
                        chi.exponent(idx)
                    })
                    .collect();
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
            CanonLabel::Char {
                g: gmin,
                values: best.expect("g conjugate to class min"),
            }
        }
    }
}

/// Twists a canonical label along an automorphism and re-canonicalizes,
/// without materializing the module.
pub fn twist_label(group: &FinGroup, label: &CanonLabel, f: &GroupMap) -> CanonLabel {
    match label {
        CanonLabel::Irrep2 { g } => canonical_label(group, f.apply(*g), &InducedRep::Irrep2),
        CanonLabel::Char { g, values } => {
            let finv = f.inverse();
            let cent_old = group.centralizer(*g);
            let gnew = f.apply(*g);
            let cent_new = group.centralizer(gnew);
            let values = cent_new
                .elements
                .iter()
                .map(|&h| {
                    let pre = finv.apply(h);
                    let idx = cent_old.index_of(pre).expect("f maps centralizers");
                    values[idx]
                })
                .collect();
            canonical_label(group, gnew, &InducedRep::Char(Character { values }))
        }
    }
}

/// A list of irreducible candidates closed under twisting, with lookup by
/// canonical label.
pub struct IrreducibleSet {
    pub group: Arc<FinGroup>,
    pub modules: Vec<YdModule>,
    pub labels: Vec<CanonLabel>,
    index: BTreeMap<CanonLabel, usize>,
}

impl IrreducibleSet {
    pub fn new(group: Arc<FinGroup>, modules: Vec<YdModule>) -> Self {
        let labels: Vec<CanonLabel> = modules
            .iter()
            .map(|m| {
                assert_eq!(m.summands.len(), 1, "irreducible summand expected");
                let (g, rep) = &m.summands[0];
                canonical_label(&group, *g, rep)
            })
            .collect();
        let mut index = BTreeMap::new();
        for (k, l) in labels.iter().enumerate() {
            let prev = index.insert(l.clone(), k);
            assert!(prev.is_none(), "duplicate irreducible in set");
        }
        IrreducibleSet {
            group,
            modules,
            labels,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn lookup(&self, label: &CanonLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Index permutations induced by each automorphism; `None` entries would
    /// mean the set is not twist-closed, which is a caller bug.
    pub fn twist_permutations(&self) -> Vec<Vec<usize>> {
        self.group
            .automorphisms()
            .iter()
            .map(|f| {
                self.labels
                    .iter()
                    .map(|l| {
                        let t = twist_label(&self.group, l, f);
                        self.lookup(&t)
                            .expect("irreducible set closed under twists")
                    })
                    .collect()
            })
            .collect()
    }

    /// Orbit partition of single modules under twisting; returns orbit
    /// representatives (minimal index) in increasing order.
    pub fn orbit_reps_rank1(&self) -> Vec<usize> {
        let perms = self.twist_permutations();
        let n = self.len();
        let mut rep: Vec<usize> = (0..n).collect();
        for p in &perms {
            for a in 0..n {
                let b = p[a];
                let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
                if ra != rb {
                    let m = ra.min(rb);
                    rep[ra] = m;
                    rep[rb] = m;
                }
            }
        }
        let mut out: Vec<usize> = (0..n).filter(|&k| find(&mut rep, k) == k).collect();
        out.sort_unstable();
        out
    }

    pub fn orbit_of(&self, idx: usize) -> Vec<usize> {
        let perms = self.twist_permutations();
        let mut seen = vec![false; self.len()];
        seen[idx] = true;
        let mut queue = vec![idx];
        let mut out = vec![idx];
        while let Some(x) = queue.pop() {
            for p in &perms {
                let y = p[x];
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn find(rep: &mut Vec<usize>, mut x: usize) -> usize {
    while rep[x] != x {
        rep[x] = rep[rep[x]];
        x = rep[x];
    }
    x
}

/// One representative per orbit of rank-sized multisets of irreducibles
/// under twist plus permutation, pruned by the dimension lower bound
/// against `budget`.
pub fn orbit_representatives(irr: &IrreducibleSet, rank: usize, budget: u32) -> Vec<Vec<usize>> {
    assert!(rank >= 1);
    let perms = irr.twist_permutations();
    let n = irr.len();
    let mut out = Vec::new();
    let mut multiset = vec![0usize; rank];
    'outer: loop {
        if passes_prune(irr, &multiset, budget) && is_orbit_min(&multiset, &perms) {
            out.push(multiset.clone());
        }
        // next non-decreasing tuple
        let mut k = rank;
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            multiset[k] += 1;
            if multiset[k] < n {
                for j in (k + 1)..rank {
                    multiset[j] = multiset[k];
                }
                break;
            }
            multiset[k] = 0;
            if k == 0 {
                break 'outer;
            }
        }
    }
    out
}

fn is_orbit_min(multiset: &[usize], perms: &[Vec<usize>]) -> bool {
    for p in perms {
        let mut mapped: Vec<usize> = multiset.iter().map(|&m| p[m]).collect();
        mapped.sort_unstable();
        if mapped.as_slice() < multiset {
            return false;
        }
    }
    true
}

/// Lower bound pruning: the product of diagonal braiding orders for diagonal
/// type, `2 + 2 dim V` otherwise.
fn passes_prune(irr: &IrreducibleSet, multiset: &[usize], budget: u32) -> bool {
    let parts: Vec<&YdModule> = multiset.iter().map(|&k| &irr.modules[k]).collect();
    let sum = YdModule::direct_sum(&parts);
    match sum.diagonal_matrix() {
        Some(b) => match b.qls_lower_bound() {
            Nq::Finite(n) => n <= budget,
            Nq::Infinite => false,
        },
        None => 2 + 2 * (sum.dim as u32) <= budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalogue;

    fn arc(name: &str) -> Arc<FinGroup> {
        Arc::new(catalogue(name).unwrap())
    }

    fn char_of(group: &FinGroup, cent_of: usize, gen_values: &[(&str, i64)]) -> Character {
        // build a centralizer character from parent-element value exponents
        let cent = group.centralizer(cent_of);
        let mut values = vec![0u8; cent.order()];
        let lookup = |name: &str| {
            let p = group.element_by_name(name).unwrap();
            cent.index_of(p).unwrap()
        };
        // determine by brute force among the centralizer's characters
        for chi in cent.group.linear_characters() {
            if gen_values
                .iter()
                .all(|&(name, zexp)| chi.exponent(lookup(name)) as i64 == zexp.rem_euclid(16))
            {
                values = chi.values.clone();
                return Character { values };
            }
        }
        panic!("no such character");
    }

    #[test]
    fn induced_dimensions_and_degrees() {
        let d4 = arc("D4");
        let s = d4.element_by_name("s").unwrap();
        let chi = char_of(&d4, s, &[("s", 8), ("r^2", 0)]);
        let m = YdModule::build_induced(&d4, s, &InducedRep::Char(chi)).unwrap();
        assert_eq!(m.dim, 2);
        let r2s = d4.element_by_name("r^2*s").unwrap();
        let mut degs = m.degree.clone();
        degs.sort_unstable();
        let mut expect = vec![s, r2s];
        expect.sort_unstable();
        assert_eq!(degs, expect);
        assert!(m.check_yd_compatibility());
        assert!(m.check_is_representation());

        let h = arc("H");
        let me = h.element_by_name("-e").unwrap();
        let m = YdModule::build_induced(&h, me, &InducedRep::Irrep2).unwrap();
        assert_eq!(m.dim, 2);
        assert_eq!(m.degree, vec![me, me]);
        assert!(m.check_yd_compatibility());
        // all-(-1) diagonal braiding
        let b = m.diagonal_matrix().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*b.entry(i, j), CycScalar::minus_one());
            }
        }

        let c22 = arc("C2xC2");
        let g1 = c22.element_by_name("g1").unwrap();
        let chi = char_of(&c22, g1, &[("g1", 8), ("g2", 0)]);
        let m = YdModule::build_induced(&c22, g1, &InducedRep::Char(chi)).unwrap();
        assert_eq!(m.dim, 1);
    }

    #[test]
    fn braiding_of_one_dimensional_module() {
        let c22 = arc("C2xC2");
        let g1 = c22.element_by_name("g1").unwrap();
        let chi = char_of(&c22, g1, &[("g1", 8), ("g2", 0)]);
        let m = YdModule::build_induced(&c22, g1, &InducedRep::Char(chi)).unwrap();
        let c = m.braiding();
        assert_eq!(c.rows, 1);
        assert_eq!(*c.at(0, 0), CycScalar::minus_one());
    }

    #[test]
    fn diagonal_matrix_of_v24_over_c2xc2() {
        // summands M(g1, g1-hat) and M(g2, g1-hat*g2-hat)
        let g = arc("C2xC2");
        let g1 = g.element_by_name("g1").unwrap();
        let g2 = g.element_by_name("g2").unwrap();
        let m1 = YdModule::build_induced(
            &g,
            g1,
            &InducedRep::Char(char_of(&g, g1, &[("g1", 8), ("g2", 0)])),
        )
        .unwrap();
        let m2 = YdModule::build_induced(
            &g,
            g2,
            &InducedRep::Char(char_of(&g, g2, &[("g1", 8), ("g2", 8)])),
        )
        .unwrap();
        let v = YdModule::direct_sum(&[&m1, &m2]);
        let b = v.diagonal_matrix().unwrap();
        // [[-1, -1], [1, -1]]
        assert_eq!(*b.entry(0, 0), CycScalar::minus_one());
        assert_eq!(*b.entry(0, 1), CycScalar::minus_one());
        assert_eq!(*b.entry(1, 0), CycScalar::one());
        assert_eq!(*b.entry(1, 1), CycScalar::minus_one());
    }

    #[test]
    fn twist_moves_table2_rows_as_published() {
        let g = arc("C2xC2");
        let g1 = g.element_by_name("g1").unwrap();
        let g1g2 = g.element_by_name("g1*g2").unwrap();
        let y21 = YdModule::build_induced(
            &g,
            g1,
            &InducedRep::Char(char_of(&g, g1, &[("g1", 8), ("g2", 0)])),
        )
        .unwrap();
        let y25 = YdModule::build_induced(
            &g,
            g1g2,
            &InducedRep::Char(char_of(&g, g1g2, &[("g1", 8), ("g2", 0)])),
        )
        .unwrap();
        // f1: g1 -> g1 g2, g2 -> g2
        let f1 = g
            .automorphisms()
            .iter()
            .find(|f| {
                f.apply(g1) == g1g2
                    && f.apply(g.element_by_name("g2").unwrap()) == g.element_by_name("g2").unwrap()
            })
            .unwrap()
            .clone();
        let twisted = y21.twist(&f1);
        assert!(twisted.check_yd_compatibility());
        assert!(twisted.isomorphic(&y25));
        assert!(!twisted.isomorphic(&y21));
        // identity twist
        let id = GroupMap::identity(g.order);
        assert!(y21.twist(&id).isomorphic(&y21));
    }

    #[test]
    fn twist_is_functorial() {
        let g = arc("C4");
        let gen = g.element_by_name("g").unwrap();
        let chi = char_of(&g, gen, &[("g", 4)]);
        let m = YdModule::build_induced(&g, gen, &InducedRep::Char(chi)).unwrap();
        let autos = g.automorphisms();
        for a in autos {
            for b in autos {
                let ab = a.compose(b);
                let lhs = m.twist(&ab);
                let rhs = m.twist(b).twist(a);
                assert!(lhs.isomorphic(&rhs));
                assert_eq!(lhs.degree, rhs.degree);
            }
        }
    }

    #[test]
    fn isomorphism_matches_intertwiner_search_on_conjugate_summands() {
        // M(s, chi) vs M(r^2 s, chi^t) over D4 are isomorphic
        let d4 = arc("D4");
        let s = d4.element_by_name("s").unwrap();
        let r2s = d4.element_by_name("r^2*s").unwrap();
        let chi = char_of(&d4, s, &[("s", 8), ("r^2", 8)]);
        let m1 = YdModule::build_induced(&d4, s, &InducedRep::Char(chi)).unwrap();
        // transport: conjugation by r maps s to r^2 s
        let cent_s = d4.centralizer(s);
        let cent = d4.centralizer(r2s);
        let r = d4.element_by_name("r").unwrap();
        let InducedRep::Char(chi_s) = &m1.summands[0].1 else {
            unreachable!()
        };
        let values: Vec<u8> = cent
            .elements
            .iter()
            .map(|&h| {
                let pre = d4.conj(d4.inv(r), h);
                chi_s.exponent(cent_s.index_of(pre).unwrap())
            })
            .collect();
        let m2 =
            YdModule::build_induced(&d4, r2s, &InducedRep::Char(Character { values })).unwrap();
        assert!(m1.isomorphic(&m2));
        // independent check: explicit intertwiner exists
        assert!(has_intertwiner(&m1, &m2));
        // and a non-isomorphic pair has none
        let chi2 = char_of(&d4, s, &[("s", 8), ("r^2", 0)]);
        let m3 = YdModule::build_induced(&d4, s, &InducedRep::Char(chi2)).unwrap();
        assert!(!m1.isomorphic(&m3));
        assert!(!has_intertwiner(&m1, &m3));
    }

    /// Searches for an invertible grading-preserving equivariant map by
    /// solving the linear constraints exactly.
    fn has_intertwiner(a: &YdModule, b: &YdModule) -> bool {
        use crate::linalg::{RowBasis, SparseVec};
        if a.dim != b.dim {
            return false;
        }
        let d = a.dim;
        // variables u_{rc}; constraints: U A(h) - B(h) U = 0 for all h, and
        // u_{rc} = 0 unless degree_b[r] == degree_a[c]
        let var = |r: usize, c: usize| (r * d + c) as u64;
        let mut rows: Vec<SparseVec<CycScalar>> = Vec::new();
        for r in 0..d {
            for c in 0..d {
                if b.degree[r] != a.degree[c] {
                    rows.push(SparseVec::from_entries(vec![(var(r, c), CycScalar::one())]));
                }
            }
        }
        for h in 0..a.group.order {
            for r in 0..d {
                for c in 0..d {
                    // sum_k U[r][k] A(h)[k][c] - B(h)[r][k] U[k][c] = 0
                    let mut entries: Vec<(u64, CycScalar)> = Vec::new();
                    for k in 0..d {
                        let m = a.action[h].at(k, c);
                        if !m.is_zero() {
                            entries.push((var(r, k), m.clone()));
                        }
                        let m = b.action[h].at(r, k);
                        if !m.is_zero() {
                            entries.push((var(k, c), -m.clone()));
                        }
                    }
                    // merge duplicate columns
                    let mut map: std::collections::BTreeMap<u64, CycScalar> = Default::default();
                    for (col, v) in entries {
                        *map.entry(col).or_insert_with(CycScalar::zero) += v;
                    }
                    rows.push(SparseVec::from_entries(map.into_iter().collect()));
                }
            }
        }
        // nullspace dimension via rank
        let nvars = d * d;
        let mut basis = RowBasis::new();
        for row in rows {
            basis.insert(row);
        }
        let nullity = nvars - basis.rank();
        if nullity == 0 {
            return false;
        }
        // extract a nullspace basis by completing pivots
        let pivots: std::collections::BTreeSet<u64> =
            basis.rows().iter().map(|r| r.leading().unwrap()).collect();
        let free: Vec<u64> = (0..nvars as u64).filter(|v| !pivots.contains(v)).collect();
        // candidate solutions: each free var set to 1, plus the sum of all
        let mut candidates: Vec<Vec<CycScalar>> = Vec::new();
        for &fvar in &free {
            let mut sol = vec![CycScalar::zero(); nvars];
            sol[fvar as usize] = CycScalar::one();
            for row in basis.rows() {
                let lead = row.leading().unwrap();
                if let Some(c) = row.get(fvar) {
                    sol[lead as usize] = -c.clone();
                }
            }
            candidates.push(sol);
        }
        let mut total = vec![CycScalar::zero(); nvars];
        for c in &candidates {
            for (t, v) in total.iter_mut().zip(c) {
                *t += v.clone();
            }
        }
        candidates.push(total);
        candidates.iter().any(|sol| {
            // invertible iff rank d
            let rows: Vec<SparseVec<CycScalar>> = (0..d)
                .map(|r| {
                    SparseVec::from_entries(
                        (0..d).map(|c| (c as u64, sol[r * d + c].clone())).collect(),
                    )
                })
                .collect();
            crate::linalg::rank_of(rows) == d
        })
    }

    #[test]
    fn orbit_counts_for_rank_two_sums() {
        // over C2xC2 with budget 8 there are 5 classes
        let g = arc("C2xC2");
        let mut mods = Vec::new();
        for h in 1..g.order {
            for chi in g.linear_characters() {
                if chi.value(h) == CycScalar::minus_one() {
                    let m = YdModule::build_induced(&g, h, &InducedRep::Char(chi.clone())).unwrap();
                    mods.push(m);
                }
            }
        }
        assert_eq!(mods.len(), 6);
        let set = IrreducibleSet::new(Arc::clone(&g), mods);
        let reps = orbit_representatives(&set, 2, 8);
        assert_eq!(reps.len(), 5);
        // irredundance: no two representatives in the same orbit
        let perms = set.twist_permutations();
        for (a, ra) in reps.iter().enumerate() {
            for rb in reps.iter().skip(a + 1) {
                let equivalent = perms.iter().any(|p| {
                    let mut m: Vec<usize> = ra.iter().map(|&k| p[k]).collect();
                    m.sort_unstable();
                    m == *rb
                });
                assert!(!equivalent);
            }
        }
    }
}
