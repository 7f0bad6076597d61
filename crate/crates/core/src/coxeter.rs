//! Type-A Weyl group combinatorics on one-line permutations: reduced words,
//! the Demazure monoid product, supports, parabolic machinery, and the root
//! actions needed by the structure theorems.
//!
//! Elements are stored as permutations of `{1..n}` (images), never as words;
//! reduced words are derived on demand by repeatedly extracting the smallest
//! left descent, which fixes one canonical word per element.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generator index {index} out of range for n = {n}")]
    BadGenerator { index: usize, n: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("subset must be a proper subset of the index set")]
    NotProper,
}

/// Element of the symmetric group `S_n` as the image list `[w(1), .., w(n)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylElt {
    perm: Vec<usize>,
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.perm)
    }
}

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        WeylElt {
            perm: (1..=n).collect(),
        }
    }

    /// The adjacent transposition `s_i = (i, i+1)`, `1 <= i <= n-1`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!((1..n).contains(&i), "generator index out of range");
        let mut w = WeylElt::identity(n);
        w.perm.swap(i - 1, i);
        w
    }

    pub fn from_images(perm: Vec<usize>) -> Result<Self, CoxeterError> {
        let n = perm.len();
        let mut seen = vec![false; n + 1];
        for &x in &perm {
            if x < 1 || x > n || seen[x] {
                return Err(CoxeterError::BadGenerator { index: x, n });
            }
            seen[x] = true;
        }
        Ok(WeylElt { perm })
    }

    /// Product of simple reflections along `word`; fails if not reduced.
    pub fn from_reduced_word(n: usize, word: &[usize]) -> Result<Self, CoxeterError> {
        let mut w = WeylElt::identity(n);
        for &i in word {
            if !(1..n).contains(&i) {
                return Err(CoxeterError::BadGenerator { index: i, n });
            }
            w = w.mul(&WeylElt::simple(n, i));
        }
        if w.length() != word.len() {
            return Err(CoxeterError::NotReduced(word.to_vec()));
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// Function composition: `(self * other)(i) = self(other(i))`.
    pub fn mul(&self, other: &WeylElt) -> WeylElt {
        assert_eq!(self.n(), other.n(), "rank mismatch");
        WeylElt {
            perm: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElt {
        let mut perm = vec![0; self.n()];
        for (k, &x) in self.perm.iter().enumerate() {
            perm[x - 1] = k + 1;
        }
        WeylElt { perm }
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for a in 0..self.perm.len() {
            for b in a + 1..self.perm.len() {
                if self.perm[a] > self.perm[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `l(w s_i) < l(w)`, i.e. `w(i) > w(i+1)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        self.apply(i) > self.apply(i + 1)
    }

    /// `l(s_i w) < l(w)`, i.e. `i+1` occurs before `i` in the image list.
    pub fn is_left_descent(&self, i: usize) -> bool {
        self.inverse().is_right_descent(i)
    }

    /// Canonical reduced word: repeatedly extract the smallest left descent.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut pos = vec![0; self.n() + 1]; // pos[v] = position of value v (1-based)
        let refresh = |w: &WeylElt, pos: &mut Vec<usize>| {
            for (k, &x) in w.perm.iter().enumerate() {
                pos[x] = k + 1;
            }
        };
        refresh(&w, &mut pos);
        let mut word = Vec::with_capacity(self.length());
        loop {
            let Some(i) = (1..self.n()).find(|&i| pos[i + 1] < pos[i]) else {
                break;
            };
            word.push(i);
            // s_i * w swaps the values i, i+1 in the image list.
            w.perm.swap(pos[i] - 1, pos[i + 1] - 1);
            pos.swap(i, i + 1);
        }
        debug_assert!(w.is_identity());
        word
    }

    /// Demazure (monoid) product: fold `w * s_i = w s_i` when the length
    /// goes up, else `w`.
    pub fn demazure(&self, other: &WeylElt) -> WeylElt {
        assert_eq!(self.n(), other.n(), "rank mismatch");
        let mut acc = self.clone();
        for i in other.canonical_word() {
            if !acc.is_right_descent(i) {
                acc = acc.mul(&WeylElt::simple(self.n(), i));
            }
        }
        acc
    }

    /// Letters occurring in any reduced word.
    pub fn support(&self) -> ParabolicSet {
        ParabolicSet {
            n: self.n(),
            set: self.canonical_word().into_iter().collect(),
        }
    }

    pub fn has_full_support(&self) -> bool {
        self.support().is_full()
    }

    /// Monoid morphism `W -> W_J`: keep letters in `J`, drop the rest, and
    /// Demazure-accumulate the filtered word.
    pub fn project_to(&self, j: &ParabolicSet) -> WeylElt {
        assert_eq!(self.n(), j.n);
        let mut acc = WeylElt::identity(self.n());
        for i in self.canonical_word() {
            if j.contains(i) && !acc.is_right_descent(i) {
                acc = acc.mul(&WeylElt::simple(self.n(), i));
            }
        }
        acc
    }

    /// `w(e_i - e_j) = e_{w(i)} - e_{w(j)}`.
    pub fn act_on_root(&self, r: &RootA) -> RootA {
        RootA::new(self.apply(r.i), self.apply(r.j))
    }

    /// All of `S_n`, in a deterministic order (lexicographic images).
    pub fn all(n: usize) -> Vec<WeylElt> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (1..=n).collect();
        loop {
            out.push(WeylElt { perm: perm.clone() });
            // next lexicographic permutation
            let Some(k) = (0..n - 1).rev().find(|&k| perm[k] < perm[k + 1]) else {
                break;
            };
            let l = (k + 1..n).rev().find(|&l| perm[l] > perm[k]).unwrap();
            perm.swap(k, l);
            perm[k + 1..].reverse();
        }
        out
    }
}

/// Subset `J` of the simple-reflection index set `{1..n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSet {
    n: usize,
    set: BTreeSet<usize>,
}

impl fmt::Debug for ParabolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J{:?}", self.set.iter().collect::<Vec<_>>())
    }
}

impl Serialize for ParabolicSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.set.iter())
    }
}

impl ParabolicSet {
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        assert!(
            set.iter().all(|&i| (1..n).contains(&i)),
            "parabolic indices must lie in 1..n"
        );
        ParabolicSet { n, set }
    }

    pub fn empty(n: usize) -> Self {
        ParabolicSet {
            n,
            set: BTreeSet::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        ParabolicSet::new(n, 1..n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.set.len() == self.n - 1
    }

    pub fn union(&self, other: &ParabolicSet) -> ParabolicSet {
        assert_eq!(self.n, other.n);
        ParabolicSet {
            n: self.n,
            set: self.set.union(&other.set).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &ParabolicSet) -> ParabolicSet {
        assert_eq!(self.n, other.n);
        ParabolicSet {
            n: self.n,
            set: self.set.intersection(&other.set).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &ParabolicSet) -> bool {
        self.set.is_subset(&other.set)
    }

    /// Blocks of the partition of `{1..n}` generated by `J`: positions `p`
    /// and `p+1` share a block iff `p` is in `J`. Singleton blocks included.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = Vec::new();
        let mut current = vec![1];
        for p in 1..self.n {
            if self.contains(p) {
                current.push(p + 1);
            } else {
                blocks.push(std::mem::replace(&mut current, vec![p + 1]));
            }
        }
        blocks.push(current);
        blocks
    }

    /// Longest element `w_J`: reverses each block.
    pub fn longest(&self) -> WeylElt {
        let mut perm: Vec<usize> = (1..=self.n).collect();
        for block in self.blocks() {
            let lo = block[0] - 1;
            let hi = block[block.len() - 1];
            perm[lo..hi].reverse();
        }
        WeylElt { perm }
    }

    /// All subsets of `{1..n-1}`, ordered by bitmask.
    pub fn all_subsets(n: usize) -> Vec<ParabolicSet> {
        let m = n - 1;
        (0..(1u32 << m))
            .map(|mask| ParabolicSet::new(n, (1..=m).filter(|i| mask >> (i - 1) & 1 == 1)))
            .collect()
    }
}

/// Root `e_i - e_j` of type `A_{n-1}`; positive iff `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootA {
    pub i: usize,
    pub j: usize,
}

impl RootA {
    pub fn new(i: usize, j: usize) -> Self {
        assert_ne!(i, j, "roots have distinct coordinates");
        RootA { i, j }
    }

    pub fn simple(i: usize) -> Self {
        RootA { i, j: i + 1 }
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn negated(&self) -> RootA {
        RootA {
            i: self.j,
            j: self.i,
        }
    }

    /// Membership in the sub-root-system `Phi_J`: both coordinates in one
    /// `J`-block.
    pub fn in_subsystem(&self, j: &ParabolicSet) -> bool {
        j.blocks()
            .iter()
            .any(|b| b.contains(&self.i) && b.contains(&self.j))
    }
}

/// Which side a coset split is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Split off the `W_J` part: for `Side::Right`, returns `(x, y)` with
/// `w = x y`, `y` in `W_J` and `x` of minimal length in `x W_J` (equivalently
/// `x(alpha_j) > 0` for all `j` in `J`); lengths are additive. For
/// `Side::Left`, returns `(y, x)` with `w = y x`, `y` in `W_J`, `x` minimal
/// in `W_J x`.
pub fn coset_split(w: &WeylElt, j: &ParabolicSet, side: Side) -> (WeylElt, WeylElt) {
    assert_eq!(w.n(), j.n());
    match side {
        Side::Right => {
            let mut x = w.clone();
            let mut y = WeylElt::identity(w.n());
            loop {
                let Some(i) = j.iter().find(|&i| x.is_right_descent(i)) else {
                    break;
                };
                let s = WeylElt::simple(w.n(), i);
                x = x.mul(&s);
                y = s.mul(&y);
            }
            (x, y)
        }
        Side::Left => {
            let (x_inv, y_inv) = coset_split(&w.inverse(), j, Side::Right);
            (y_inv.inverse(), x_inv.inverse())
        }
    }
}

/// Witness for the root lemma: some `j` not in `J'` with
/// `w_{J'}(alpha_j)` outside `Phi_J`. Both subsets must be proper.
pub fn root_lemma_witness(
    j_set: &ParabolicSet,
    j_prime: &ParabolicSet,
) -> Result<usize, CoxeterError> {
    assert_eq!(j_set.n(), j_prime.n());
    if j_set.is_full() || j_prime.is_full() {
        return Err(CoxeterError::NotProper);
    }
    let w = j_prime.longest();
    (1..j_set.n())
        .filter(|&j| !j_prime.contains(j))
        .find(|&j| !w.act_on_root(&RootA::simple(j)).in_subsystem(j_set))
        .ok_or(CoxeterError::NotProper)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, i: usize) -> WeylElt {
        WeylElt::simple(n, i)
    }

    #[test]
    fn lengths_and_words() {
        let w0 = ParabolicSet::full(3).longest();
        assert_eq!(w0.images(), &[3, 2, 1]);
        assert_eq!(w0.length(), 3);
        assert_eq!(w0.canonical_word(), vec![1, 2, 1]);
        let w = s(3, 2).mul(&s(3, 1));
        assert_eq!(w.images(), &[3, 1, 2]);
        assert_eq!(w.canonical_word(), vec![2, 1]);
        assert!(WeylElt::from_reduced_word(3, &[1, 1]).is_err());
    }

    #[test]
    fn demazure_examples() {
        let n = 3;
        assert_eq!(s(n, 1).demazure(&s(n, 1)), s(n, 1));
        assert_eq!(s(n, 1).demazure(&s(n, 2)), s(n, 1).mul(&s(n, 2)));
        let a = s(n, 1).mul(&s(n, 2));
        let b = s(n, 2).mul(&s(n, 1));
        assert_eq!(a.demazure(&b), ParabolicSet::full(n).longest());
    }

    #[test]
    fn demazure_word_independent_s4_exhaustive() {
        // Accumulating letterwise over any reduced word gives the same
        // element: check via all reduced words of each w, against the
        // canonical-word implementation.
        fn all_reduced_words(w: &WeylElt) -> Vec<Vec<usize>> {
            if w.is_identity() {
                return vec![vec![]];
            }
            let mut words = Vec::new();
            for i in 1..w.n() {
                if w.is_left_descent(i) {
                    let rest = WeylElt::simple(w.n(), i).mul(w);
                    for mut tail in all_reduced_words(&rest) {
                        tail.insert(0, i);
                        words.push(tail);
                    }
                }
            }
            words
        }
        for w in WeylElt::all(4) {
            for v in WeylElt::all(4) {
                let expected = w.demazure(&v);
                for word in all_reduced_words(&v) {
                    let mut acc = w.clone();
                    for i in word {
                        if !acc.is_right_descent(i) {
                            acc = acc.mul(&WeylElt::simple(4, i));
                        }
                    }
                    assert_eq!(acc, expected);
                }
            }
        }
    }

    #[test]
    fn support_examples_and_union_law() {
        assert!(WeylElt::identity(3).support().is_empty());
        let w0 = ParabolicSet::full(3).longest();
        assert_eq!(w0.support(), ParabolicSet::full(3));
        assert_eq!(s(4, 2).support(), ParabolicSet::new(4, [2]));
        for w in WeylElt::all(4) {
            for v in WeylElt::all(4) {
                assert_eq!(
                    w.demazure(&v).support(),
                    w.support().union(&v.support()),
                    "supp(w*v) = supp(w) u supp(v) failed at {w:?}, {v:?}"
                );
            }
        }
    }

    #[test]
    fn projection_examples_and_morphism_s4() {
        let n = 3;
        let j1 = ParabolicSet::new(n, [1]);
        let w = WeylElt::from_reduced_word(n, &[1, 2, 1]).unwrap();
        assert_eq!(w.project_to(&j1), s(n, 1));
        assert_eq!(w.project_to(&ParabolicSet::empty(n)), WeylElt::identity(n));
        for j in ParabolicSet::all_subsets(4) {
            for w in WeylElt::all(4) {
                if w.support().is_subset(&j) {
                    assert_eq!(w.project_to(&j), w);
                }
                for v in WeylElt::all(4) {
                    assert_eq!(
                        w.demazure(&v).project_to(&j),
                        w.project_to(&j).demazure(&v.project_to(&j)),
                        "pi_J not a monoid morphism at {w:?}, {v:?}, {j:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn longest_examples() {
        assert_eq!(ParabolicSet::full(3).longest().images(), &[3, 2, 1]);
        assert_eq!(ParabolicSet::empty(3).longest(), WeylElt::identity(3));
        assert_eq!(ParabolicSet::new(3, [1]).longest(), s(3, 1));
        assert_eq!(ParabolicSet::new(5, [1, 3, 4]).longest().images(), &[
            2, 1, 5, 4, 3
        ]);
    }

    #[test]
    fn coset_split_examples_and_lengths_s4() {
        let n = 3;
        let j = ParabolicSet::new(n, [1]);
        assert_eq!(
            coset_split(&s(n, 1), &j, Side::Right),
            (WeylElt::identity(n), s(n, 1))
        );
        let w = s(n, 2).mul(&s(n, 1));
        let (x, y) = coset_split(&w, &j, Side::Right);
        assert_eq!((x.clone(), y.clone()), (s(n, 2), s(n, 1)));
        assert!(x.act_on_root(&RootA::simple(1)).is_positive());

        for j in ParabolicSet::all_subsets(4) {
            for w in WeylElt::all(4) {
                let (x, y) = coset_split(&w, &j, Side::Right);
                assert_eq!(x.mul(&y), w);
                assert_eq!(x.length() + y.length(), w.length());
                assert!(y.support().is_subset(&j));
                assert!(j.iter().all(|i| x.act_on_root(&RootA::simple(i)).is_positive()));

                let (y2, x2) = coset_split(&w, &j, Side::Left);
                assert_eq!(y2.mul(&x2), w);
                assert_eq!(x2.length() + y2.length(), w.length());
                assert!(y2.support().is_subset(&j));
            }
        }
    }

    #[test]
    fn root_action_examples() {
        let n = 3;
        assert_eq!(s(n, 1).act_on_root(&RootA::simple(1)), RootA::new(2, 1));
        assert_eq!(s(n, 2).act_on_root(&RootA::simple(1)), RootA::new(1, 3));
        let r = RootA::new(2, 3);
        assert_eq!(WeylElt::identity(n).act_on_root(&r), r);
    }

    #[test]
    fn root_lemma_examples_and_exhaustive() {
        let j = ParabolicSet::new(3, [1]);
        let jp = ParabolicSet::new(3, [2]);
        assert_eq!(root_lemma_witness(&j, &jp).unwrap(), 1);
        assert!(root_lemma_witness(&ParabolicSet::full(3), &jp).is_err());

        for n in 2..=6 {
            for j in ParabolicSet::all_subsets(n) {
                if j.is_full() {
                    continue;
                }
                for jp in ParabolicSet::all_subsets(n) {
                    if jp.is_full() {
                        continue;
                    }
                    let witness = root_lemma_witness(&j, &jp)
                        .unwrap_or_else(|_| panic!("no witness for {j:?}, {jp:?}, n={n}"));
                    assert!(!jp.contains(witness));
                    let image = jp.longest().act_on_root(&RootA::simple(witness));
                    assert!(!image.in_subsystem(&j));
                }
            }
        }
    }

    #[test]
    fn canonical_word_is_reduced_everywhere() {
        for n in 2..=5 {
            for w in WeylElt::all(n) {
                let word = w.canonical_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(WeylElt::from_reduced_word(n, &word).unwrap(), w);
            }
        }
    }
}
