//! Finite 2-groups of order at most 16 as multiplication tables.
//!
//! Groups are built once from polycyclic presentations by normal-form word
//! collection; everything downstream (conjugacy classes, centralizers,
//! characters, automorphisms) is exhaustive search over the table, which is
//! instantaneous at these orders.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde_json::json;

use crate::cyclotomic::CycScalar;
use crate::error::Error;
use crate::matrix::Mat;

/// A finite group given by its full multiplication table. Index 0 is the
/// identity.
pub struct FinGroup {
    pub id: String,
    pub order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    pub names: Vec<String>,
    /// indices of a fixed generating set (the presentation generators for
    /// catalogue groups)
    pub generators: Vec<usize>,
    bfs: OnceLock<Vec<Option<(usize, usize)>>>,
    chars: OnceLock<Vec<Character>>,
    autos: OnceLock<Vec<GroupMap>>,
    centralizers: OnceLock<Vec<Subgroup>>,
}

impl Clone for FinGroup {
    fn clone(&self) -> Self {
        FinGroup {
            id: self.id.clone(),
            order: self.order,
            table: self.table.clone(),
            inverse: self.inverse.clone(),
            names: self.names.clone(),
            generators: self.generators.clone(),
            bfs: OnceLock::new(),
            chars: OnceLock::new(),
            autos: OnceLock::new(),
            centralizers: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinGroup({}, order {})", self.id, self.order)
    }
}

/// A multiplicative character with root-of-unity values, stored as exponents
/// of the fixed primitive 16th root: value = zeta^e, with `e >= 8` encoding
/// `-zeta^(e-8)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    pub values: Vec<u8>,
}

impl Character {
    pub fn trivial(order: usize) -> Self {
        Character {
            values: vec![0; order],
        }
    }

    pub fn value(&self, g: usize) -> CycScalar {
        CycScalar::zeta_pow(self.values[g] as i64)
    }

    pub fn exponent(&self, g: usize) -> u8 {
        self.values[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a + b) % 16)
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Character {
        Character {
            values: self
                .values
                .iter()
                .map(|&a| ((a as u32 * n) % 16) as u8)
                .collect(),
        }
    }
}

/// A multiplicative map between groups, given element-wise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupMap {
    pub images: Vec<usize>,
}

impl GroupMap {
    pub fn identity(order: usize) -> Self {
        GroupMap {
            images: (0..order).collect(),
        }
    }

    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    /// `self` after `other`: `(self . other)(x) = self(other(x))`.
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        GroupMap {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupMap {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        GroupMap { images }
    }

    pub fn is_multiplicative(&self, g: &FinGroup) -> bool {
        for a in 0..g.order {
            for b in 0..g.order {
                if self.images[g.mul(a, b)] != g.mul(self.images[a], self.images[b]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for &y in &self.images {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }
}

/// A finite-dimensional representation given by one matrix per element.
#[derive(Clone, Debug)]
pub struct Representation {
    pub degree: usize,
    pub matrices: Vec<Mat>,
}

impl Representation {
    pub fn matrix(&self, g: usize) -> &Mat {
        &self.matrices[g]
    }
}

/// A subgroup with its own reindexed multiplication table.
#[derive(Clone, Debug)]
pub struct Subgroup {
    /// parent element indices, sorted, identity first
    pub elements: Vec<usize>,
    pub group: FinGroup,
}

impl Subgroup {
    pub fn index_of(&self, parent_elem: usize) -> Option<usize> {
        self.elements.binary_search(&parent_elem).ok()
    }

    pub fn contains(&self, parent_elem: usize) -> bool {
        self.index_of(parent_elem).is_some()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

// ---------------------------------------------------------------------------
// presentation machinery

struct GenSpec {
    name: &'static str,
    bound: u32,
    /// g^bound = tail (a word in generators, usually empty)
    power_tail: Vec<(usize, u32)>,
}

struct Presentation {
    gens: Vec<GenSpec>,
    /// (j, i) with j > i: g_j * g_i = word * g_j
    swaps: BTreeMap<(usize, usize), Vec<(usize, u32)>>,
    namer: Option<fn(&[u32]) -> String>,
}

impl Presentation {
    fn swap_word(&self, j: usize, i: usize) -> Vec<(usize, u32)> {
        self.swaps
            .get(&(j, i))
            .cloned()
            .unwrap_or_else(|| vec![(i, 1)])
    }

    fn collect(&self, word: &[(usize, u32)]) -> Vec<u32> {
        let t = self.gens.len();
        let mut w: Vec<(usize, u32)> = word.iter().copied().filter(|&(_, e)| e > 0).collect();
        for _ in 0..1_000_000 {
            // merge adjacent runs of the same generator
            let mut merged: Vec<(usize, u32)> = Vec::with_capacity(w.len());
            for (g, e) in w {
                if e == 0 {
                    continue;
                }
                if let Some(last) = merged.last_mut() {
                    if last.0 == g {
                        last.1 += e;
                        continue;
                    }
                }
                merged.push((g, e));
            }
            w = merged;
            if let Some(pos) = w.iter().position(|&(g, e)| e >= self.gens[g].bound) {
                let (g, e) = w[pos];
                let bound = self.gens[g].bound;
                let mut nw = Vec::with_capacity(w.len() + 2);
                nw.extend_from_slice(&w[..pos]);
                nw.extend(self.gens[g].power_tail.iter().copied());
                if e > bound {
                    nw.push((g, e - bound));
                }
                nw.extend_from_slice(&w[pos + 1..]);
                w = nw;
                continue;
            }
            if let Some(pos) = w.windows(2).position(|p| p[0].0 > p[1].0) {
                let (j, ej) = w[pos];
                let (i, ei) = w[pos + 1];
                let sw = self.swap_word(j, i);
                let mut nw = Vec::with_capacity(w.len() + sw.len() + 2);
                nw.extend_from_slice(&w[..pos]);
                if ej > 1 {
                    nw.push((j, ej - 1));
                }
                nw.extend(sw.iter().copied());
                nw.push((j, 1));
                if ei > 1 {
                    nw.push((i, ei - 1));
                }
                nw.extend_from_slice(&w[pos + 2..]);
                w = nw;
                continue;
            }
            let mut exps = vec![0u32; t];
            for (g, e) in w {
                exps[g] = e;
            }
            return exps;
        }
        panic!("word collection did not terminate");
    }

    fn index_of(&self, exps: &[u32]) -> usize {
        let mut idx = 0usize;
        for (k, spec) in self.gens.iter().enumerate() {
            idx = idx * spec.bound as usize + exps[k] as usize;
        }
        idx
    }

    fn default_name(&self, exps: &[u32]) -> String {
        let mut parts = Vec::new();
        for (k, spec) in self.gens.iter().enumerate() {
            match exps[k] {
                0 => {}
                1 => parts.push(spec.name.to_string()),
                e => parts.push(format!("{}^{}", spec.name, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    fn build(&self, id: &str) -> FinGroup {
        let order: usize = self.gens.iter().map(|g| g.bound as usize).product();
        // enumerate exponent tuples in index order
        let mut tuples = Vec::with_capacity(order);
        let t = self.gens.len();
        let mut cur = vec![0u32; t];
        loop {
            tuples.push(cur.clone());
            let mut k = t;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < self.gens[k].bound {
                    break;
                }
                cur[k] = 0;
                if k == 0 {
                    break;
                }
            }
            if cur.iter().all(|&e| e == 0) {
                break;
            }
        }
        assert_eq!(tuples.len(), order);
        let word_of = |exps: &[u32]| -> Vec<(usize, u32)> {
            exps.iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(g, &e)| (g, e))
                .collect()
        };
        let mut table = vec![0usize; order * order];
        for (a, ea) in tuples.iter().enumerate() {
            for (b, eb) in tuples.iter().enumerate() {
                let mut w = word_of(ea);
                w.extend(word_of(eb));
                let prod = self.collect(&w);
                table[a * order + b] = self.index_of(&prod);
            }
        }
        let mut inverse = vec![0usize; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("two-sided inverse");
        }
        let names = tuples
            .iter()
            .map(|e| match self.namer {
                Some(f) => f(e),
                None => self.default_name(e),
            })
            .collect();
        let generators = (0..t)
            .map(|k| {
                let mut e = vec![0u32; t];
                e[k] = 1;
                self.index_of(&e)
            })
            .collect();
        FinGroup {
            id: id.to_string(),
            order,
            table,
            inverse,
            names,
            generators,
            bfs: OnceLock::new(),
            chars: OnceLock::new(),
            autos: OnceLock::new(),
            centralizers: OnceLock::new(),
        }
    }
}

fn quaternion_name(a: u32, b: u32) -> String {
    match (a, b) {
        (0, 0) => "e",
        (1, 0) => "i",
        (2, 0) => "-e",
        (3, 0) => "-i",
        (0, 1) => "j",
        (1, 1) => "k",
        (2, 1) => "-j",
        (3, 1) => "-k",
        _ => unreachable!(),
    }
    .to_string()
}

/// The groups the classification touches, by their stable identifiers.
pub const CATALOGUE: &[&str] = &[
    "C2", "C2xC2", "C4", "C2xC2xC2", "C2xC4", "C8", "D4", "H", "C2^4", "C2xC2xC4", "C4xC4",
    "C2xC8", "C16", "B1", "B2", "B3", "B4", "B5", "B6",
];

/// Builds a catalogue group from its presentation.
pub fn catalogue(name: &str) -> Result<FinGroup, Error> {
    let cyclic = |names: &[(&'static str, u32)]| -> Presentation {
        Presentation {
            gens: names
                .iter()
                .map(|&(n, b)| GenSpec {
                    name: n,
                    bound: b,
                    power_tail: vec![],
                })
                .collect(),
            swaps: BTreeMap::new(),
            namer: None,
        }
    };
    let pres = match name {
        "C2" => cyclic(&[("g1", 2)]),
        "C2xC2" => cyclic(&[("g1", 2), ("g2", 2)]),
        "C4" => cyclic(&[("g", 4)]),
        "C2xC2xC2" => cyclic(&[("g1", 2), ("g2", 2), ("g3", 2)]),
        "C2xC4" => cyclic(&[("g1", 2), ("g2", 4)]),
        "C8" => cyclic(&[("g", 8)]),
        "C2^4" => cyclic(&[("g1", 2), ("g2", 2), ("g3", 2), ("g4", 2)]),
        "C2xC2xC4" => cyclic(&[("g1", 2), ("g2", 2), ("g3", 4)]),
        "C4xC4" => cyclic(&[("g1", 4), ("g2", 4)]),
        "C2xC8" => cyclic(&[("g1", 2), ("g2", 8)]),
        "C16" => cyclic(&[("g", 16)]),
        "D4" => {
            let mut p = cyclic(&[("r", 4), ("s", 2)]);
            p.swaps.insert((1, 0), vec![(0, 3)]);
            p
        }
        "H" => Presentation {
            gens: vec![
                GenSpec {
                    name: "i",
                    bound: 4,
                    power_tail: vec![],
                },
                GenSpec {
                    name: "j",
                    bound: 2,
                    power_tail: vec![(0, 2)],
                },
            ],
            swaps: BTreeMap::from([((1, 0), vec![(0, 3)])]),
            namer: Some(|e| quaternion_name(e[0], e[1])),
        },
        "B1" => {
            let mut p = cyclic(&[("g1", 8), ("g2", 2)]);
            p.swaps.insert((1, 0), vec![(0, 5)]);
            p
        }
        "B2" => {
            let mut p = cyclic(&[("g1", 4), ("g2", 2), ("g3", 2)]);
            p.swaps.insert((2, 1), vec![(0, 2), (1, 1)]);
            p
        }
        "B3" => {
            let mut p = cyclic(&[("g1", 4), ("g2", 4)]);
            p.swaps.insert((1, 0), vec![(0, 3)]);
            p
        }
        "B4" => {
            let mut p = cyclic(&[("r", 4), ("s", 2), ("t", 2)]);
            p.swaps.insert((1, 0), vec![(0, 3)]);
            p
        }
        "B5" => {
            let mut p = cyclic(&[("g1", 4), ("g2", 2), ("g3", 2)]);
            p.swaps.insert((2, 0), vec![(0, 1), (1, 1)]);
            p
        }
        "B6" => Presentation {
            gens: vec![
                GenSpec {
                    name: "i",
                    bound: 4,
                    power_tail: vec![],
                },
                GenSpec {
                    name: "j",
                    bound: 2,
                    power_tail: vec![(0, 2)],
                },
                GenSpec {
                    name: "t",
                    bound: 2,
                    power_tail: vec![],
                },
            ],
            swaps: BTreeMap::from([((1, 0), vec![(0, 3)])]),
            namer: Some(|e| {
                let base = quaternion_name(e[0], e[1]);
                match (base.as_str(), e[2]) {
                    (_, 0) => base,
                    ("e", 1) => "t".to_string(),
                    (_, 1) => format!("{base}*t"),
                    _ => unreachable!(),
                }
            }),
        },
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    Ok(pres.build(name))
}

impl FinGroup {
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, t: usize, g: usize) -> usize {
        self.mul(self.mul(t, g), self.inverse[t])
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// element = parent-of-bfs * gen, for multiplicative evaluation
    fn bfs_factorization(&self) -> &Vec<Option<(usize, usize)>> {
        self.bfs.get_or_init(|| {
            let mut fact: Vec<Option<(usize, usize)>> = vec![None; self.order];
            let mut seen = vec![false; self.order];
            seen[0] = true;
            let mut queue = vec![0usize];
            while let Some(x) = queue.pop() {
                for (k, &g) in self.generators.iter().enumerate() {
                    let y = self.mul(x, g);
                    if !seen[y] {
                        seen[y] = true;
                        fact[y] = Some((x, k));
                        queue.push(y);
                    }
                }
            }
            assert!(seen.iter().all(|&s| s), "generators do not generate");
            fact
        })
    }

    /// Extends generator images to a full element-wise map; the caller
    /// must still verify multiplicativity.
    fn extend_from_generators(
        &self,
        codomain_mul: impl Fn(usize, usize) -> usize,
        images: &[usize],
    ) -> Vec<usize> {
        let fact = self.bfs_factorization();
        let mut out = vec![usize::MAX; self.order];
        out[0] = 0;
        // process in BFS-consistent order
        let mut remaining: Vec<usize> = (1..self.order).collect();
        while !remaining.is_empty() {
            let mut progressed = false;
            remaining.retain(|&x| {
                let (p, k) = fact[x].expect("factorized");
                if out[p] != usize::MAX {
                    out[x] = codomain_mul(out[p], images[k]);
                    progressed = true;
                    false
                } else {
                    true
                }
            });
            assert!(progressed);
        }
        out
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|t| self.conj(t, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn class_of(&self, g: usize) -> Vec<usize> {
        let mut class: Vec<usize> = (0..self.order).map(|t| self.conj(t, g)).collect();
        class.sort_unstable();
        class.dedup();
        class
    }

    fn subgroup_from_elements(&self, mut elements: Vec<usize>, id: &str) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let n = elements.len();
        let pos = |e: usize| elements.binary_search(&e).expect("closed subset");
        let mut table = vec![0usize; n * n];
        for (a, &ea) in elements.iter().enumerate() {
            for (b, &eb) in elements.iter().enumerate() {
                table[a * n + b] = pos(self.mul(ea, eb));
            }
        }
        let mut inverse = vec![0usize; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).unwrap();
        }
        // greedy generating set
        let mut gens: Vec<usize> = Vec::new();
        let mut closure = vec![0usize];
        for x in 1..n {
            if closure.contains(&x) {
                continue;
            }
            gens.push(x);
            // regenerate closure
            let mut cl = vec![0usize];
            let mut queue = vec![0usize];
            while let Some(y) = queue.pop() {
                for &g in &gens {
                    let z = table[y * n + g];
                    if !cl.contains(&z) {
                        cl.push(z);
                        queue.push(z);
                    }
                }
            }
            closure = cl;
        }
        let names = elements.iter().map(|&e| self.names[e].clone()).collect();
        Subgroup {
            elements: elements.clone(),
            group: FinGroup {
                id: id.to_string(),
                order: n,
                table,
                inverse,
                names,
                generators: gens,
                bfs: OnceLock::new(),
                chars: OnceLock::new(),
                autos: OnceLock::new(),
                centralizers: OnceLock::new(),
            },
        }
    }

    pub fn centralizer(&self, g: usize) -> &Subgroup {
        let all = self.centralizers.get_or_init(|| {
            (0..self.order)
                .map(|x| {
                    let elements: Vec<usize> = (0..self.order)
                        .filter(|&h| self.mul(h, x) == self.mul(x, h))
                        .collect();
                    self.subgroup_from_elements(elements, &format!("{}_centralizer", self.id))
                })
                .collect()
        });
        &all[g]
    }

    pub fn center(&self) -> Subgroup {
        let elements: Vec<usize> = (0..self.order)
            .filter(|&h| (0..self.order).all(|g| self.mul(h, g) == self.mul(g, h)))
            .collect();
        self.subgroup_from_elements(elements, &format!("{}_center", self.id))
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut seed = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(self.mul(a, b), self.mul(self.inverse[a], self.inverse[b]));
                seed.push(c);
            }
        }
        let elements = self.closure(&seed);
        self.subgroup_from_elements(elements, &format!("{}_derived", self.id))
    }

    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut elems = vec![0usize];
        let mut queue = vec![0usize];
        let mut gens: Vec<usize> = seed.to_vec();
        gens.sort_unstable();
        gens.dedup();
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !in_set[y] {
                    in_set[y] = true;
                    elems.push(y);
                    queue.push(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// The quotient by the commutator subgroup, with the projection map.
    pub fn abelianization(&self) -> (FinGroup, Vec<usize>) {
        let derived = self.commutator_subgroup();
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            for &k in &derived.elements {
                coset_of[self.mul(g, k)] = idx;
            }
            reps.push(g);
        }
        let n = reps.len();
        let mut table = vec![0usize; n * n];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                table[a * n + b] = coset_of[self.mul(ra, rb)];
            }
        }
        let mut inverse = vec![0usize; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).unwrap();
        }
        let mut gens: Vec<usize> = self
            .generators
            .iter()
            .map(|&g| coset_of[g])
            .filter(|&c| c != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() && n > 1 {
            gens = vec![1];
        }
        let names = reps
            .iter()
            .map(|&r| format!("[{}]", self.names[r]))
            .collect();
        let quotient = FinGroup {
            id: format!("{}_ab", self.id),
            order: n,
            table,
            inverse,
            names,
            generators: gens,
            bfs: OnceLock::new(),
            chars: OnceLock::new(),
            autos: OnceLock::new(),
            centralizers: OnceLock::new(),
        };
        (quotient, coset_of)
    }

    /// All degree-1 representations, deterministically ordered.
    pub fn linear_characters(&self) -> &[Character] {
        self.chars.get_or_init(|| {
            let gens = &self.generators;
            let mut cand: Vec<Vec<u8>> = Vec::new();
            for &g in gens {
                let ord = self.element_order(g) as u32;
                let exps: Vec<u8> = (0u8..16)
                    .filter(|&e| {
                        let root_ord = 16 / num_integer::gcd(16u32, e as u32).max(1);
                        let root_ord = if e == 0 { 1 } else { root_ord };
                        ord % root_ord == 0
                    })
                    .collect();
                cand.push(exps);
            }
            let mut found: Vec<Character> = Vec::new();
            let mut idx = vec![0usize; gens.len()];
            'outer: loop {
                let images: Vec<u8> = idx.iter().zip(&cand).map(|(&i, c)| c[i]).collect();
                // extend multiplicatively over exponent arithmetic mod 16
                let ext = self.extend_from_generators(
                    |a, b| (a + b) % 16,
                    &images.iter().map(|&e| e as usize).collect::<Vec<_>>(),
                );
                let ok = (0..self.order).all(|a| {
                    (0..self.order).all(|b| (ext[a] + ext[b]) % 16 == ext[self.mul(a, b)])
                });
                if ok {
                    found.push(Character {
                        values: ext.iter().map(|&e| e as u8).collect(),
                    });
                }
                // next tuple
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < cand[k].len() {
                        continue 'outer;
                    }
                    idx[k] = 0;
                }
                break;
            }
            found.sort();
            found.dedup();
            found
        })
    }

    /// The full automorphism group by generator-image search, pruned by
    /// element order and by the image of the center.
    pub fn automorphisms(&self) -> &[GroupMap] {
        self.autos.get_or_init(|| {
            let center = self.center();
            let gens = &self.generators;
            let cands: Vec<Vec<usize>> = gens
                .iter()
                .map(|&g| {
                    let ord = self.element_order(g);
                    let central = center.contains(g);
                    (0..self.order)
                        .filter(|&x| {
                            self.element_order(x) == ord && (!central || center.contains(x))
                        })
                        .collect()
                })
                .collect();
            let mut found = Vec::new();
            let mut idx = vec![0usize; gens.len()];
            if cands.iter().any(|c| c.is_empty()) {
                return found;
            }
            'outer: loop {
                let images: Vec<usize> = idx.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
                let ext = self.extend_from_generators(|a, b| self.mul(a, b), &images);
                let gm = GroupMap { images: ext };
                if gm.is_bijective() && gm.is_multiplicative(self) {
                    found.push(gm);
                }
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < cands[k].len() {
                        continue 'outer;
                    }
                    idx[k] = 0;
                }
                break;
            }
            found.sort();
            found.dedup();
            found
        })
    }

    /// The catalogued degree-2 irreducible representations. Only the two
    /// nonabelian groups of order 8 carry one that the classification uses.
    pub fn degree_two_irreps(&self) -> Result<Vec<Representation>, Error> {
        let gen_mats: Vec<Mat> = match self.id.as_str() {
            "D4" => vec![
                Mat::from_rows(vec![
                    vec![CycScalar::zero(), CycScalar::minus_one()],
                    vec![CycScalar::one(), CycScalar::zero()],
                ]),
                Mat::from_rows(vec![
                    vec![CycScalar::zero(), CycScalar::one()],
                    vec![CycScalar::one(), CycScalar::zero()],
                ]),
            ],
            "H" => vec![
                Mat::from_rows(vec![
                    vec![CycScalar::zero(), CycScalar::minus_one()],
                    vec![CycScalar::one(), CycScalar::zero()],
                ]),
                Mat::from_rows(vec![
                    vec![CycScalar::i(), CycScalar::zero()],
                    vec![CycScalar::zero(), -CycScalar::i()],
                ]),
            ],
            _ => return Err(Error::NoDegreeTwoIrreps(self.id.clone())),
        };
        let fact = self.bfs_factorization();
        let mut mats: Vec<Option<Mat>> = vec![None; self.order];
        mats[0] = Some(Mat::identity(2));
        let mut remaining: Vec<usize> = (1..self.order).collect();
        while !remaining.is_empty() {
            remaining.retain(|&x| {
                let (p, k) = fact[x].expect("factorized");
                if let Some(mp) = mats[p].clone() {
                    mats[x] = Some(mp.mul(&gen_mats[k]));
                    false
                } else {
                    true
                }
            });
        }
        let matrices: Vec<Mat> = mats.into_iter().map(Option::unwrap).collect();
        for a in 0..self.order {
            for b in 0..self.order {
                if matrices[a].mul(&matrices[b]) != matrices[self.mul(a, b)] {
                    return Err(Error::NotARepresentation(self.id.clone()));
                }
            }
        }
        Ok(vec![Representation {
            degree: 2,
            matrices,
        }])
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "id": self.id,
            "order": self.order,
            "names": self.names,
            "generators": self.generators,
            "center": self.center().elements.iter().map(|&e| self.names[e].clone()).collect::<Vec<_>>(),
            "commutator_subgroup": self.commutator_subgroup().elements.iter().map(|&e| self.names[e].clone()).collect::<Vec<_>>(),
        })
    }
}

/// Builds a character of `g` from generator value exponents, verifying
/// multiplicativity.
pub fn character_from_generator_exponents(g: &FinGroup, exps: &[u8]) -> Result<Character, Error> {
    assert_eq!(exps.len(), g.generators.len());
    let ext = g.extend_from_generators(
        |a, b| (a + b) % 16,
        &exps.iter().map(|&e| e as usize).collect::<Vec<_>>(),
    );
    let chi = Character {
        values: ext.iter().map(|&e| e as u8).collect(),
    };
    for a in 0..g.order {
        for b in 0..g.order {
            if (chi.values[a] + chi.values[b]) % 16 != chi.values[g.mul(a, b)] {
                return Err(Error::NotARepresentation(format!(
                    "character exponents {exps:?} on {}",
                    g.id
                )));
            }
        }
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(name: &str) -> FinGroup {
        catalogue(name).unwrap()
    }

    #[test]
    fn tables_are_groups() {
        for name in CATALOGUE {
            let g = get(name);
            // associativity, identity, inverses
            for a in 0..g.order {
                assert_eq!(g.mul(0, a), a);
                assert_eq!(g.mul(a, 0), a);
                assert_eq!(g.mul(a, g.inv(a)), 0);
                assert_eq!(g.mul(g.inv(a), a), 0);
            }
            for a in 0..g.order {
                for b in 0..g.order {
                    for c in 0..g.order {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn catalogue_orders() {
        let expected = [
            ("C2", 2),
            ("C2xC2", 4),
            ("C4", 4),
            ("C2xC2xC2", 8),
            ("C2xC4", 8),
            ("C8", 8),
            ("D4", 8),
            ("H", 8),
            ("C2^4", 16),
            ("C2xC2xC4", 16),
            ("C4xC4", 16),
            ("C2xC8", 16),
            ("C16", 16),
            ("B1", 16),
            ("B2", 16),
            ("B3", 16),
            ("B4", 16),
            ("B5", 16),
            ("B6", 16),
        ];
        for (name, ord) in expected {
            assert_eq!(get(name).order, ord, "{name}");
        }
        assert!(catalogue("C3").is_err());
    }

    #[test]
    fn dihedral_structure() {
        let d4 = get("D4");
        let r = d4.element_by_name("r").unwrap();
        let s = d4.element_by_name("s").unwrap();
        let r2 = d4.mul(r, r);
        // conjugacy classes: {1}, {r^2}, {s, r^2 s}, {r s, r^3 s}, {r, r^3}
        let classes = d4.conjugacy_classes();
        assert_eq!(classes.len(), 5);
        let center = d4.center();
        assert_eq!(center.elements, vec![0, r2]);
        // centralizer of s is {1, s, r^2, r^2 s}
        let cent = d4.centralizer(s);
        assert_eq!(cent.order(), 4);
        assert!(cent.contains(r2));
        assert!(cent.contains(d4.mul(r2, s)));
        assert!(cent.group.is_abelian());
        // Klein four group: every nontrivial element has order 2
        assert!(cent
            .group
            .names
            .iter()
            .enumerate()
            .skip(1)
            .all(|(k, _)| cent.group.element_order(k) == 2));
    }

    #[test]
    fn quaternion_structure() {
        let h = get("H");
        let i = h.element_by_name("i").unwrap();
        let j = h.element_by_name("j").unwrap();
        let k = h.element_by_name("k").unwrap();
        let me = h.element_by_name("-e").unwrap();
        assert_eq!(h.mul(i, j), k);
        assert_eq!(h.mul(i, i), me);
        assert_eq!(h.mul(j, j), me);
        assert_eq!(h.mul(k, k), me);
        let derived = h.commutator_subgroup();
        assert_eq!(derived.elements, vec![0, me]);
        assert_eq!(h.conjugacy_classes().len(), 5);
    }

    #[test]
    fn order_16_table_data() {
        // centers, commutator subgroups and abelianizations of B1..B6
        struct Row {
            name: &'static str,
            center: &'static [&'static str],
            derived: &'static [&'static str],
            ab_order: usize,
            ab_exponent: usize,
        }
        let rows = [
            Row {
                name: "B1",
                center: &["1", "g1^2", "g1^4", "g1^6"],
                derived: &["1", "g1^4"],
                ab_order: 8,
                ab_exponent: 4,
            },
            Row {
                name: "B2",
                center: &["1", "g1", "g1^2", "g1^3"],
                derived: &["1", "g1^2"],
                ab_order: 8,
                ab_exponent: 2,
            },
            Row {
                name: "B3",
                center: &["1", "g1^2", "g2^2", "g1^2*g2^2"],
                derived: &["1", "g1^2"],
                ab_order: 8,
                ab_exponent: 4,
            },
            Row {
                name: "B4",
                center: &["1", "r^2", "t", "r^2*t"],
                derived: &["1", "r^2"],
                ab_order: 8,
                ab_exponent: 2,
            },
            Row {
                name: "B5",
                center: &["1", "g1^2", "g2", "g1^2*g2"],
                derived: &["1", "g2"],
                ab_order: 8,
                ab_exponent: 4,
            },
            Row {
                name: "B6",
                center: &["e", "-e", "t", "-e*t"],
                derived: &["e", "-e"],
                ab_order: 8,
                ab_exponent: 2,
            },
        ];
        for row in rows {
            let g = get(row.name);
            assert!(!g.is_abelian(), "{}", row.name);
            let center: Vec<String> = g
                .center()
                .elements
                .iter()
                .map(|&e| g.names[e].clone())
                .collect();
            let mut expect: Vec<String> = row.center.iter().map(|s| s.to_string()).collect();
            expect.sort_by_key(|n| g.element_by_name(n).unwrap());
            assert_eq!(center, expect, "{} center", row.name);
            let derived: Vec<String> = g
                .commutator_subgroup()
                .elements
                .iter()
                .map(|&e| g.names[e].clone())
                .collect();
            let mut expect: Vec<String> = row.derived.iter().map(|s| s.to_string()).collect();
            expect.sort_by_key(|n| g.element_by_name(n).unwrap());
            assert_eq!(derived, expect, "{} derived", row.name);
            let (ab, proj) = g.abelianization();
            assert_eq!(ab.order, row.ab_order, "{} ab", row.name);
            let exp = (0..ab.order).map(|x| ab.element_order(x)).max().unwrap();
            assert_eq!(exp, row.ab_exponent, "{} ab exponent", row.name);
            // projection is multiplicative
            for a in 0..g.order {
                for b in 0..g.order {
                    assert_eq!(proj[g.mul(a, b)], ab.mul(proj[a], proj[b]));
                }
            }
            // center is not inside the commutator subgroup
            let derived = g.commutator_subgroup();
            assert!(g.center().elements.iter().any(|&z| !derived.contains(z)));
        }
    }

    #[test]
    fn linear_character_counts() {
        for (name, count) in [
            ("C2xC2", 4),
            ("C4", 4),
            ("D4", 4),
            ("H", 4),
            ("C2xC4", 8),
            ("B4", 8),
            ("C16", 16),
        ] {
            let g = get(name);
            assert_eq!(g.linear_characters().len(), count, "{name}");
        }
        // characters of D4 vanish on the center
        let d4 = get("D4");
        let r2 = d4.element_by_name("r^2").unwrap();
        for chi in d4.linear_characters() {
            assert_eq!(chi.exponent(r2), 0);
        }
        // exactly 4 characters of B4 send t to -1
        let b4 = get("B4");
        let t = b4.element_by_name("t").unwrap();
        let count = b4
            .linear_characters()
            .iter()
            .filter(|chi| chi.value(t) == CycScalar::minus_one())
            .count();
        assert_eq!(count, 4);
    }

    #[test]
    fn characters_separate_points_on_abelian_groups() {
        for name in ["C2xC2", "C4", "C2xC4", "C8", "C4xC4", "C16"] {
            let g = get(name);
            let chars = g.linear_characters();
            assert_eq!(chars.len(), g.order);
            for a in 0..g.order {
                for b in (a + 1)..g.order {
                    assert!(
                        chars.iter().any(|c| c.values[a] != c.values[b]),
                        "{name}: {a} {b} not separated"
                    );
                }
            }
        }
    }

    #[test]
    fn automorphism_group_sizes() {
        for (name, count) in [
            ("C2xC2", 6),
            ("C4", 2),
            ("C2xC4", 8),
            ("C8", 4),
            ("D4", 8),
            ("H", 24),
            ("C2xC2xC2", 168),
            ("C16", 8),
        ] {
            let g = get(name);
            let autos = g.automorphisms();
            assert_eq!(autos.len(), count, "{name}");
            for a in autos {
                assert!(a.is_multiplicative(&g) && a.is_bijective());
            }
            // closed under composition and inversion
            let set: std::collections::BTreeSet<_> = autos.iter().cloned().collect();
            for a in autos.iter().take(6) {
                assert!(set.contains(&a.inverse()));
                for b in autos.iter().take(6) {
                    assert!(set.contains(&a.compose(b)));
                }
            }
        }
    }

    #[test]
    fn degree_two_irreps_satisfy_relations() {
        let d4 = get("D4");
        let rho = &d4.degree_two_irreps().unwrap()[0];
        let r = d4.element_by_name("r").unwrap();
        let r2 = d4.element_by_name("r^2").unwrap();
        assert_eq!(rho.matrix(r).pow(2), *rho.matrix(r2));
        assert_eq!(rho.matrix(r2).as_scalar().unwrap(), CycScalar::minus_one());

        let h = get("H");
        let rho = &h.degree_two_irreps().unwrap()[0];
        let i = h.element_by_name("i").unwrap();
        let j = h.element_by_name("j").unwrap();
        let k = h.element_by_name("k").unwrap();
        assert_eq!(rho.matrix(i).mul(rho.matrix(j)), *rho.matrix(k));

        assert!(get("C4").degree_two_irreps().is_err());
    }

    #[test]
    fn character_from_exponents_round_trip() {
        let g = get("C2xC4");
        let chi = character_from_generator_exponents(&g, &[8, 4]).unwrap();
        let g1 = g.element_by_name("g1").unwrap();
        let g2 = g.element_by_name("g2").unwrap();
        assert_eq!(chi.value(g1), CycScalar::minus_one());
        assert_eq!(chi.value(g2), CycScalar::i());
        assert!(character_from_generator_exponents(&g, &[1, 0]).is_err());
    }
}
