//! Reduced words in the free group F_mu and finite subtrees of its Cayley tree.
//!
//! Edges follow the left convention: a type-i edge joins `g` and `z_i g`.
//! The geodesic from the identity to `w` then runs through the suffixes of
//! `w`, so finite subtrees containing the identity are the suffix-closed
//! vertex sets. Right translation `g -> g u` is a tree automorphism in this
//! convention, which is what lets group-ring matrices act on subtrees.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("bad word token {0:?}")]
    BadToken(String),
    #[error("word is not reduced: {0:?}")]
    NotReduced(String),
    #[error("generator z{gen} out of range for mu = {mu}")]
    GeneratorOutOfRange { gen: u32, mu: usize },
}

/// A generator `z_gen` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    /// 1-based generator index.
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Self {
        assert!(gen >= 1, "generators are numbered from 1");
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "z{}^-1", self.gen)
        } else {
            write!(f, "z{}", self.gen)
        }
    }
}

/// A reduced word. Ordered by length, then lexicographically by letters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(gen: u32) -> Self {
        Word(vec![Letter::new(gen, false)])
    }

    pub fn generator_inv(gen: u32) -> Self {
        Word(vec![Letter::new(gen, true)])
    }

    /// Reduces the letter sequence freely.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.gen).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        let mut cancel = 0;
        while cancel < self.0.len()
            && cancel < rhs.0.len()
            && self.0[self.0.len() - 1 - cancel] == rhs.0[cancel].inv()
        {
            cancel += 1;
        }
        let mut out = Vec::with_capacity(self.0.len() + rhs.0.len() - 2 * cancel);
        out.extend_from_slice(&self.0[..self.0.len() - cancel]);
        out.extend_from_slice(&rhs.0[cancel..]);
        Word(out)
    }

    /// `z_gen^{±1} · self`.
    pub fn left_mul_letter(&self, l: Letter) -> Word {
        Word(vec![l]).mul(self)
    }

    /// All suffixes, from `self` down to the identity.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.0.len()).map(move |k| Word(self.0[k..].to_vec()))
    }

    /// Exponent sum of each generator, indexed `0..mu`.
    pub fn exponent_sums(&self, mu: usize) -> Vec<i64> {
        let mut v = vec![0i64; mu];
        for l in &self.0 {
            v[l.gen as usize - 1] += l.exponent();
        }
        v
    }

    pub fn check_mu(&self, mu: usize) -> Result<(), WordError> {
        match self.0.iter().find(|l| l.gen as usize > mu) {
            Some(l) => Err(WordError::GeneratorOutOfRange { gen: l.gen, mu }),
            None => Ok(()),
        }
    }

    /// Every reduced word of length at most `max_len`, in canonical order.
    pub fn all_up_to(mu: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::identity()];
        let mut layer = vec![Word::identity()];
        let letters: Vec<Letter> = (1..=mu as u32)
            .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
            .collect();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &letters {
                    if w.0.last() == Some(&l.inv()) {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{self}")
        }
    }
}

fn parse_letter(tok: &str) -> Option<Letter> {
    let rest = tok.strip_prefix('z')?;
    let (digits, inverse) = match rest.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    let gen: u32 = digits.parse().ok()?;
    Some(Letter { gen, inverse })
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts exactly the printed form: single-space separated `z<k>` or
    /// `z<k>^-1` tokens, already reduced. The empty string is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for tok in s.split(' ') {
            let l = parse_letter(tok).ok_or_else(|| WordError::BadToken(tok.to_string()))?;
            if letters.last() == Some(&l.inv()) {
                return Err(WordError::NotReduced(s.to_string()));
            }
            letters.push(l);
        }
        Ok(Word(letters))
    }
}

/// A finite subtree of the Cayley tree containing the identity vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleySubtree {
    mu: usize,
    vertices: BTreeSet<Word>,
}

/// One edge `(source, z_gen · source)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub gen: u32,
    pub source: Word,
}

impl Edge {
    pub fn target(&self) -> Word {
        self.source.left_mul_letter(Letter::new(self.gen, false))
    }
}

impl CayleySubtree {
    /// The one-vertex tree `{1}`.
    pub fn trivial(mu: usize) -> Self {
        CayleySubtree {
            mu,
            vertices: BTreeSet::from([Word::identity()]),
        }
    }

    /// Smallest subtree containing the identity and `words`.
    pub fn geodesic_closure<'a>(mu: usize, words: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut vertices = BTreeSet::from([Word::identity()]);
        for w in words {
            for s in w.suffixes() {
                if !vertices.insert(s) {
                    // every shorter suffix is already present
                    break;
                }
            }
        }
        let t = CayleySubtree { mu, vertices };
        debug_assert_eq!(t.edge_count() + 1, t.vertex_count());
        t
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn vertices(&self) -> &BTreeSet<Word> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.vertices.contains(w)
    }

    pub fn is_subtree_of(&self, other: &CayleySubtree) -> bool {
        self.vertices.is_subset(&other.vertices)
    }

    /// Sources of the type-`gen` edges, in canonical order.
    pub fn edges_of_type(&self, gen: u32) -> Vec<Word> {
        let z = Letter::new(gen, false);
        self.vertices
            .iter()
            .filter(|g| self.vertices.contains(&g.left_mul_letter(z)))
            .cloned()
            .collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        (1..=self.mu as u32)
            .flat_map(|gen| {
                self.edges_of_type(gen)
                    .into_iter()
                    .map(move |source| Edge { gen, source })
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        (1..=self.mu as u32).map(|g| self.edges_of_type(g).len()).sum()
    }

    /// Smallest subtree containing `self` and every `g · w` with `g` a vertex
    /// and `w ∈ support`; the tree a group-ring matrix with that support
    /// carries `self` into.
    pub fn pushforward<'a>(&self, support: impl IntoIterator<Item = &'a Word>) -> CayleySubtree {
        let support: Vec<&Word> = support.into_iter().collect();
        let mut images: Vec<Word> = self.vertices.iter().cloned().collect();
        for g in &self.vertices {
            for w in &support {
                images.push(g.mul(w));
            }
        }
        CayleySubtree::geodesic_closure(self.mu, images.iter())
    }

    /// Enlarges `self` by the closure of extra vertices.
    pub fn union_with<'a>(&self, extra: impl IntoIterator<Item = &'a Word>) -> CayleySubtree {
        let extra: Vec<&Word> = extra.into_iter().collect();
        CayleySubtree::geodesic_closure(self.mu, self.vertices.iter().chain(extra))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(w("z1").mul(&w("z1^-1")), Word::identity());
        assert_eq!(w("z1").mul(&w("z2")), w("z1 z2"));
        assert_eq!(w("z1 z2^-1").mul(&w("z2 z1")), w("z1 z1"));
    }

    #[test]
    fn parse_print_round_trip() {
        for s in ["", "z1", "z2^-1", "z1 z12^-1 z3", "z1 z1 z1"] {
            assert_eq!(w(s).to_string(), s);
        }
        for bad in ["z0", "z1  z2", " z1", "z1^-2", "x1", "z01", "z1 z1^-1", "z1^1"] {
            assert!(bad.parse::<Word>().is_err(), "{bad}");
        }
    }

    #[test]
    fn closure_of_empty_set_is_a_point() {
        let t = CayleySubtree::geodesic_closure(2, []);
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(t.edge_count(), 0);
    }

    #[test]
    fn closure_of_z1z2() {
        let t = CayleySubtree::geodesic_closure(2, [&w("z1 z2")]);
        let vs: Vec<Word> = t.vertices().iter().cloned().collect();
        assert_eq!(vs, vec![w(""), w("z2"), w("z1 z2")]);
        assert_eq!(t.edges_of_type(2), vec![w("")]);
        assert_eq!(t.edges_of_type(1), vec![w("z2")]);
    }

    #[test]
    fn closure_of_inverse_letter() {
        let t = CayleySubtree::geodesic_closure(1, [&w("z1^-1")]);
        assert_eq!(t.vertex_count(), 2);
        let e = t.edges();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].source, w("z1^-1"));
        assert_eq!(e[0].target(), Word::identity());
    }

    #[test]
    fn pushforward_examples() {
        let star = CayleySubtree::trivial(2).pushforward(&[w(""), w("z1"), w("z2")]);
        assert_eq!(star.vertex_count(), 3);
        assert_eq!(star.edges_of_type(1), vec![w("")]);
        assert_eq!(star.edges_of_type(2), vec![w("")]);

        let t = CayleySubtree::geodesic_closure(1, [&w("z1")]);
        assert_eq!(t.pushforward(&[w("")]), t);
        let grown = t.pushforward(&[w("z1")]);
        let vs: Vec<Word> = grown.vertices().iter().cloned().collect();
        assert_eq!(vs, vec![w(""), w("z1"), w("z1 z1")]);
    }

    #[test]
    fn enumeration_counts() {
        // 1 + 4 + 12 + 36 reduced words of length <= 3 in F_2
        assert_eq!(Word::all_up_to(2, 3).len(), 53);
        let ws = Word::all_up_to(1, 2);
        assert_eq!(ws.len(), 5);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }
}
