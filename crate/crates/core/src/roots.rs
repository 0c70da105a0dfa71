//! Root data of classical type and their Weyl groups.
//!
//! Weights are integer vectors in a fixed basis of the character lattice:
//! the simple roots for the adjoint lattice, the fundamental weights for the
//! simply connected one. Weyl group elements are numbered in the linear
//! order (length, canonical word) and carry their canonical reduced word,
//! the lexicographically smallest one.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default bound on the Weyl group order.
pub const DEFAULT_WEYL_BOUND: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    SimplyConnected,
    Adjoint,
}

/// A root, recorded in lattice coordinates and in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub weight: Vec<i32>,
    pub simple: Vec<i32>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.simple.iter().all(|c| *c >= 0)
    }

    pub fn height(&self) -> i32 {
        self.simple.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    pub word: Vec<usize>,
    matrix: Vec<i32>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Index of a Weyl group element in the linear order.
pub type Elem = usize;
/// Index of a root: positive roots come first, `neg(i) = i ± |Σ⁺|`.
pub type RootId = usize;

#[derive(Debug)]
pub struct RootDatum {
    components: Vec<(CartanType, usize)>,
    lattice: Lattice,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    /// `coroot[i] · λ = ⟨λ, α_i^∨⟩` for a weight in lattice coordinates.
    coroot: Vec<Vec<i32>>,
    roots: Vec<Root>,
    root_lookup: HashMap<Vec<i32>, RootId>,
    elems: Vec<WeylElement>,
    elem_lookup: HashMap<Vec<i32>, Elem>,
    right_simple: Vec<Vec<Elem>>,
    inverse: Vec<Elem>,
    bruhat_below: Vec<Vec<u64>>,
    reflection: Vec<Elem>,
}

fn component_cartan(ty: CartanType, n: usize) -> Vec<Vec<i32>> {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i32>>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match ty {
        CartanType::A => chain(&mut a, n),
        CartanType::B => {
            chain(&mut a, n);
            a[n - 1][n - 2] = -2;
        }
        CartanType::C => {
            chain(&mut a, n);
            a[n - 2][n - 1] = -2;
        }
        CartanType::D => {
            chain(&mut a, n - 1);
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
    }
    a
}

fn component_order(ty: CartanType, n: usize) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    match ty {
        CartanType::A => fact * (n as u128 + 1),
        CartanType::B | CartanType::C => fact << n,
        CartanType::D => fact << (n - 1),
    }
}

fn mat_mul(a: &[i32], b: &[i32], n: usize) -> Vec<i32> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn mat_vec(a: &[i32], v: &[i32], n: usize) -> Vec<i32> {
    (0..n).map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum()).collect()
}

impl RootDatum {
    /// Parse a designator such as `"A2"`, `"B3"` or `"A1xA2"`.
    pub fn parse(designator: &str, lattice: Lattice) -> Result<Arc<Self>> {
        Self::parse_with_bound(designator, lattice, DEFAULT_WEYL_BOUND)
    }

    pub fn parse_with_bound(designator: &str, lattice: Lattice, bound: usize) -> Result<Arc<Self>> {
        let mut comps = Vec::new();
        for part in designator.split(['x', '×', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let ty = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => CartanType::A,
                Some('B') => CartanType::B,
                Some('C') => CartanType::C,
                Some('D') => CartanType::D,
                _ => return Err(Error::InvalidDatum(format!("unsupported Cartan type in `{part}`"))),
            };
            let n: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidDatum(format!("bad rank in `{part}`")))?;
            comps.push((ty, n));
        }
        Self::new(comps, lattice, bound)
    }

    pub fn new(components: Vec<(CartanType, usize)>, lattice: Lattice, bound: usize) -> Result<Arc<Self>> {
        if components.is_empty() {
            return Err(Error::InvalidDatum("no components".into()));
        }
        for (ty, n) in &components {
            let min = match ty {
                CartanType::A => 1,
                CartanType::B | CartanType::C => 2,
                CartanType::D => 3,
            };
            if *n < min {
                return Err(Error::InvalidDatum(format!("{ty:?}{n} needs rank at least {min}")));
            }
        }
        let rank: usize = components.iter().map(|(_, n)| n).sum();
        if rank > 5 {
            return Err(Error::InvalidDatum(format!("rank {rank} exceeds the supported maximum 5")));
        }
        let order: u128 = components.iter().map(|(t, n)| component_order(*t, *n)).product();
        if order > bound as u128 {
            return Err(Error::TooLarge { size: order as usize, bound });
        }

        let mut cartan = vec![vec![0; rank]; rank];
        let mut off = 0;
        for (ty, n) in &components {
            let block = component_cartan(*ty, *n);
            for i in 0..*n {
                for j in 0..*n {
                    cartan[off + i][off + j] = block[i][j];
                }
            }
            off += n;
        }

        // Lattice coordinates of simple roots and the coroot pairing.
        let (simple_weight, coroot): (Vec<Vec<i32>>, Vec<Vec<i32>>) = match lattice {
            Lattice::Adjoint => (
                (0..rank).map(|j| (0..rank).map(|i| (i == j) as i32).collect()).collect(),
                cartan.clone(),
            ),
            Lattice::SimplyConnected => (
                (0..rank).map(|j| (0..rank).map(|i| cartan[i][j]).collect()).collect(),
                (0..rank).map(|i| (0..rank).map(|k| (i == k) as i32).collect()).collect(),
            ),
        };
        let to_weight = |simple: &[i32]| -> Vec<i32> {
            let mut w = vec![0; rank];
            for (j, c) in simple.iter().enumerate() {
                for i in 0..rank {
                    w[i] += c * simple_weight[j][i];
                }
            }
            w
        };

        // Close the simple roots under simple reflections, in simple-root
        // coordinates.
        let reflect = |i: usize, beta: &[i32]| -> Vec<i32> {
            let pair: i32 = (0..rank).map(|j| cartan[i][j] * beta[j]).sum();
            let mut out = beta.to_vec();
            out[i] -= pair;
            out
        };
        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..rank {
                let c = reflect(i, &b);
                if seen.insert(c.clone(), ()).is_none() {
                    queue.push_back(c);
                }
            }
        }
        let mut positive: Vec<Vec<i32>> = seen.into_keys().filter(|b| b.iter().all(|c| *c >= 0)).collect();
        positive.sort_by(|a, b| {
            let (ha, hb): (i32, i32) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut roots: Vec<Root> = positive
            .iter()
            .map(|s| Root { weight: to_weight(s), simple: s.clone() })
            .collect();
        let negs: Vec<Root> = roots
            .iter()
            .map(|r| Root {
                weight: r.weight.iter().map(|c| -c).collect(),
                simple: r.simple.iter().map(|c| -c).collect(),
            })
            .collect();
        roots.extend(negs);
        let root_lookup: HashMap<Vec<i32>, RootId> =
            roots.iter().enumerate().map(|(i, r)| (r.weight.clone(), i)).collect();
        if root_lookup.len() != roots.len() {
            return Err(Error::InvalidDatum("roots are not distinct in the chosen lattice".into()));
        }

        // Simple reflection matrices on the lattice: s_i = 1 − α_i ⊗ α_i^∨.
        let simple_mats: Vec<Vec<i32>> = (0..rank)
            .map(|i| {
                let mut m = vec![0; rank * rank];
                for r in 0..rank {
                    for c in 0..rank {
                        m[r * rank + c] = (r == c) as i32 - simple_weight[i][r] * coroot[i][c];
                    }
                }
                m
            })
            .collect();

        let mut datum = RootDatum {
            components,
            lattice,
            rank,
            cartan,
            coroot,
            roots,
            root_lookup,
            elems: Vec::new(),
            elem_lookup: HashMap::new(),
            right_simple: Vec::new(),
            inverse: Vec::new(),
            bruhat_below: Vec::new(),
            reflection: Vec::new(),
        };
        datum.enumerate_weyl(&simple_mats);
        Ok(Arc::new(datum))
    }

    fn enumerate_weyl(&mut self, simple_mats: &[Vec<i32>]) {
        let n = self.rank;
        let identity: Vec<i32> = (0..n * n).map(|k| (k / n == k % n) as i32).collect();
        // Breadth-first by length; the canonical word of v is the least
        // `word(v s_i) ++ [i]` over right descents i.
        let mut by_matrix: HashMap<Vec<i32>, Vec<usize>> = HashMap::new();
        by_matrix.insert(identity.clone(), vec![]);
        let mut level = vec![identity];
        let mut all: Vec<(Vec<usize>, Vec<i32>)> = vec![(vec![], level[0].clone())];
        loop {
            let mut next: HashMap<Vec<i32>, Vec<usize>> = HashMap::new();
            for m in &level {
                let word = &by_matrix[m];
                for (i, s) in simple_mats.iter().enumerate() {
                    let prod = mat_mul(m, s, n);
                    if by_matrix.contains_key(&prod) {
                        continue;
                    }
                    let mut cand = word.clone();
                    cand.push(i);
                    next.entry(prod)
                        .and_modify(|w| {
                            if cand < *w {
                                *w = cand.clone();
                            }
                        })
                        .or_insert(cand);
                }
            }
            if next.is_empty() {
                break;
            }
            level = next.keys().cloned().collect();
            for (m, w) in next {
                all.push((w.clone(), m.clone()));
                by_matrix.insert(m, w);
            }
        }
        all.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        self.elems = all.into_iter().map(|(word, matrix)| WeylElement { word, matrix }).collect();
        self.elem_lookup = self.elems.iter().enumerate().map(|(i, e)| (e.matrix.clone(), i)).collect();
        self.right_simple = self
            .elems
            .iter()
            .map(|e| simple_mats.iter().map(|s| self.elem_lookup[&mat_mul(&e.matrix, s, n)]).collect())
            .collect();
        self.inverse = (0..self.elems.len())
            .map(|i| {
                let w: Vec<usize> = self.elems[i].word.iter().rev().cloned().collect();
                self.from_word_unchecked(&w)
            })
            .collect();

        // Bruhat lower sets: [e, u s] = [e, u] ∪ [e, u]·s for l(us) > l(u).
        let words = self.elems.len();
        let blocks = words.div_ceil(64);
        let mut below: Vec<Vec<u64>> = vec![vec![0; blocks]; words];
        below[0][0] = 1;
        for w in 1..words {
            let word = &self.elems[w].word;
            let last = *word.last().unwrap();
            let u = self.right_simple[w][last];
            let mut set = below[u].clone();
            for x in 0..words {
                if below[u][x / 64] >> (x % 64) & 1 == 1 {
                    let y = self.right_simple[x][last];
                    set[y / 64] |= 1 << (y % 64);
                }
            }
            set[w / 64] |= 1 << (w % 64);
            below[w] = set;
        }
        self.bruhat_below = below;

        // Reflection in each root: s_β = u s_i u⁻¹ whenever β = u(α_i).
        let npos = self.num_positive();
        let mut refl = vec![usize::MAX; self.roots.len()];
        for u in 0..words {
            for i in 0..n {
                let beta = self.act_on_root(u, self.simple_root(i));
                let b = if beta >= npos { beta - npos } else { beta };
                if refl[b] == usize::MAX {
                    let us = self.right_simple[u][i];
                    let r = self.mul(us, self.inverse[u]);
                    refl[b] = r;
                    refl[b + npos] = r;
                }
            }
        }
        self.reflection = refl;
    }

    fn from_word_unchecked(&self, word: &[usize]) -> Elem {
        word.iter().fold(0, |w, i| self.right_simple[w][*i])
    }

    pub fn components(&self) -> &[(CartanType, usize)] {
        &self.components
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id]
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> std::ops::Range<RootId> {
        0..self.num_positive()
    }

    pub fn negative_roots(&self) -> std::ops::Range<RootId> {
        self.num_positive()..self.roots.len()
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id < self.num_positive()
    }

    pub fn neg_root(&self, id: RootId) -> RootId {
        let n = self.num_positive();
        if id < n { id + n } else { id - n }
    }

    /// The root with the given lattice coordinates.
    pub fn root_id(&self, weight: &[i32]) -> Option<RootId> {
        self.root_lookup.get(weight).copied()
    }

    pub fn simple_root(&self, i: usize) -> RootId {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        self.roots.iter().position(|r| r.simple == e).expect("simple roots are roots")
    }

    /// `⟨λ, α_i^∨⟩`.
    pub fn coroot_pairing(&self, i: usize, weight: &[i32]) -> i32 {
        self.coroot[i].iter().zip(weight).map(|(a, b)| a * b).sum()
    }

    /// Label such as `a1+2a2`.
    pub fn root_name(&self, id: RootId) -> String {
        let r = &self.roots[id];
        let mut out = String::new();
        for (i, c) in r.simple.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if *c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&format!("a{}", i + 1));
        }
        out
    }

    pub fn weyl_order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.elems.len()
    }

    pub fn element(&self, w: Elem) -> &WeylElement {
        &self.elems[w]
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn longest(&self) -> Elem {
        self.elems.len() - 1
    }

    pub fn length(&self, w: Elem) -> usize {
        self.elems[w].word.len()
    }

    pub fn word(&self, w: Elem) -> &[usize] {
        &self.elems[w].word
    }

    /// Canonical word as `s1.s2`, or `e` for the identity.
    pub fn word_name(&self, w: Elem) -> String {
        let word = &self.elems[w].word;
        if word.is_empty() {
            return "e".into();
        }
        word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(".")
    }

    /// Parse `s1.s2` (or `e`) into an element; the word need not be reduced.
    pub fn parse_word(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(0);
        }
        let mut word = Vec::new();
        for part in s.split('.') {
            let i: usize = part
                .trim()
                .strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .filter(|i| *i >= 1 && *i <= self.rank)
                .ok_or_else(|| Error::InvalidDatum(format!("bad word letter `{part}`")))?;
            word.push(i - 1);
        }
        Ok(self.from_word(&word))
    }

    /// Product `s_{i1} ⋯ s_{ik}` (any word).
    pub fn from_word(&self, word: &[usize]) -> Elem {
        self.from_word_unchecked(word)
    }

    pub fn simple_reflection(&self, i: usize) -> Elem {
        self.right_simple[0][i]
    }

    /// `w s_i`.
    pub fn mul_simple(&self, w: Elem, i: usize) -> Elem {
        self.right_simple[w][i]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.elem_lookup[&mat_mul(&self.elems[a].matrix, &self.elems[b].matrix, self.rank)]
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        self.inverse[w]
    }

    /// The reflection `s_β`.
    pub fn reflection(&self, beta: RootId) -> Elem {
        self.reflection[beta]
    }

    /// Action matrix (row-major) in lattice coordinates.
    pub fn matrix(&self, w: Elem) -> &[i32] {
        &self.elems[w].matrix
    }

    pub fn act(&self, w: Elem, weight: &[i32]) -> Vec<i32> {
        mat_vec(&self.elems[w].matrix, weight, self.rank)
    }

    pub fn act_on_root(&self, w: Elem, beta: RootId) -> RootId {
        self.root_lookup[&self.act(w, &self.roots[beta].weight)]
    }

    pub fn bruhat_leq(&self, v: Elem, w: Elem) -> bool {
        self.bruhat_below[w][v / 64] >> (v % 64) & 1 == 1
    }

    /// Positive roots `β` with `w⁻¹(β) < 0`.
    pub fn inversion_set(&self, w: Elem) -> Vec<RootId> {
        let winv = self.inverse[w];
        self.positive_roots().filter(|b| !self.is_positive(self.act_on_root(winv, *b))).collect()
    }

    /// Minimal-length representatives of `W / W_Θ`, in the linear order.
    pub fn coset_min_reps(&self, theta: &[usize]) -> Vec<Elem> {
        let simple: Vec<RootId> = theta.iter().map(|i| self.simple_root(*i)).collect();
        self.elements()
            .filter(|w| simple.iter().all(|a| self.is_positive(self.act_on_root(*w, *a))))
            .collect()
    }

    /// The subgroup `W_Θ` generated by the given simple reflections.
    pub fn parabolic_subgroup(&self, theta: &[usize]) -> Vec<Elem> {
        let mut seen = vec![false; self.weyl_order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(w) = queue.pop_front() {
            for i in theta {
                let v = self.right_simple[w][*i];
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        self.elements().filter(|w| seen[*w]).collect()
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.components.iter().map(|(t, n)| format!("{t:?}{n}")).collect();
        let lat = match self.lattice {
            Lattice::Adjoint => "adj",
            Lattice::SimplyConnected => "sc",
        };
        write!(f, "{} ({lat})", names.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> Arc<RootDatum> {
        RootDatum::parse(s, Lattice::Adjoint).unwrap()
    }

    #[test]
    fn group_orders() {
        let a1 = datum("A1");
        assert_eq!(a1.weyl_order(), 2);
        assert_eq!(a1.word_name(1), "s1");
        let a2 = datum("A2");
        assert_eq!(a2.weyl_order(), 6);
        assert_eq!(a2.length(a2.longest()), 3);
        let b2 = datum("B2");
        assert_eq!(b2.weyl_order(), 8);
        assert_eq!(b2.length(b2.longest()), 4);
        assert_eq!(b2.num_positive(), 4);
        assert_eq!(datum("D4").num_positive(), 12);
        assert_eq!(datum("C3").num_positive(), 9);
        assert_eq!(datum("A1xA2").weyl_order(), 12);
    }

    #[test]
    fn too_large() {
        let err = RootDatum::parse_with_bound("A4", Lattice::Adjoint, 100).unwrap_err();
        assert_eq!(err, Error::TooLarge { size: 120, bound: 100 });
    }

    #[test]
    fn canonical_words_are_lexmin() {
        let a2 = datum("A2");
        let names: Vec<String> = a2.elements().map(|w| a2.word_name(w)).collect();
        assert_eq!(names, ["e", "s1", "s2", "s1.s2", "s2.s1", "s1.s2.s1"]);
    }

    #[test]
    fn bruhat_examples() {
        let a2 = datum("A2");
        let s1 = a2.parse_word("s1").unwrap();
        let s2 = a2.parse_word("s2").unwrap();
        let s12 = a2.parse_word("s1.s2").unwrap();
        assert!(a2.bruhat_leq(s1, s12));
        assert!(!a2.bruhat_leq(s2, s1));
        for w in a2.elements() {
            assert!(a2.bruhat_leq(0, w));
        }
    }

    #[test]
    fn inversion_sets() {
        let a2 = datum("A2");
        assert!(a2.inversion_set(0).is_empty());
        assert_eq!(a2.inversion_set(a2.longest()).len(), 3);
        let s12 = a2.parse_word("s1.s2").unwrap();
        let mut names: Vec<String> = a2.inversion_set(s12).into_iter().map(|b| a2.root_name(b)).collect();
        names.sort();
        assert_eq!(names, ["a1", "a1+a2"]);
    }

    #[test]
    fn simply_connected_a1() {
        let a1 = RootDatum::parse("A1", Lattice::SimplyConnected).unwrap();
        assert_eq!(a1.root(a1.simple_root(0)).weight, vec![2]);
        let s = a1.simple_reflection(0);
        let alpha = a1.simple_root(0);
        assert_eq!(a1.act_on_root(s, alpha), a1.neg_root(alpha));
    }

    #[test]
    fn parabolic_cosets() {
        let a2 = datum("A2");
        let reps: Vec<String> = a2.coset_min_reps(&[1]).into_iter().map(|w| a2.word_name(w)).collect();
        assert_eq!(reps, ["e", "s1", "s2.s1"]);
        assert_eq!(a2.parabolic_subgroup(&[1]).len(), 2);
    }

    #[test]
    fn reflections_fix_their_hyperplane() {
        let b2 = datum("B2");
        for beta in b2.positive_roots() {
            let s = b2.reflection(beta);
            assert_eq!(b2.mul(s, s), 0);
            assert_eq!(b2.act_on_root(s, beta), b2.neg_root(beta));
        }
    }
}
