//! Exterior algebra on odd-degree generators e_1, …, e_n.
//!
//! Atom classes always have odd degree (2·codim − 1), so the exterior algebra
//! on them has honest alternating signs: monomials are strictly increasing
//! index words, a product with a repeated generator dies, and sorting a
//! concatenation costs the parity of its out-of-order pairs.  This module
//! knows nothing about arrangements; it provides the word arithmetic shared
//! by the kernel analysis of the atom-class map and the witness algebras.

use crate::linalg::{format_rat, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A rational linear combination of exterior monomials.  Keys are strictly
/// increasing index words (0-based); map order is the lexicographic word
/// order used everywhere a basis ordering is needed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExtElement {
    terms: BTreeMap<Vec<usize>, Rat>,
}

impl ExtElement {
    pub fn zero() -> Self {
        ExtElement::default()
    }

    /// The empty word with coefficient 1 (the algebra unit).
    pub fn unit() -> Self {
        ExtElement::monomial(&[])
    }

    pub fn generator(i: usize) -> Self {
        ExtElement::monomial(&[i])
    }

    /// A single monomial with coefficient 1.  The word must be strictly
    /// increasing.
    pub fn monomial(word: &[usize]) -> Self {
        assert!(
            word.windows(2).all(|w| w[0] < w[1]),
            "monomial word must be strictly increasing"
        );
        let mut e = ExtElement::zero();
        e.add_term(word.to_vec(), crate::linalg::rat(1));
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[usize]) -> Rat {
        self.terms.get(word).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, word: Vec<usize>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> ExtElement {
        let mut out = ExtElement::zero();
        if c.is_zero() {
            return out;
        }
        for (w, v) in &self.terms {
            out.add_term(w.clone(), c * v);
        }
        out
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        self.add(&other.scale(&crate::linalg::rat(-1)))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if let Some((word, sign)) = wedge_words(w1, w2) {
                    out.add_term(word, c1 * c2 * crate::linalg::rat(sign));
                }
            }
        }
        out
    }

    /// Word lengths appearing in this element, ascending.
    pub fn word_lengths(&self) -> Vec<usize> {
        let mut ls: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }
}

/// Merges two strictly increasing words; `None` on a repeated index, else
/// the merged word and the sign (−1)^(out-of-order pairs).
pub fn wedge_words(w1: &[usize], w2: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut inversions = 0usize;
    for &a in w1 {
        for &b in w2 {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    let mut word: Vec<usize> = w1.iter().chain(w2).copied().collect();
    word.sort_unstable();
    Some((word, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// The alternating drop-one sum over a strictly increasing word:
///
/// ```text
/// [e_{i1}, …, e_{ik}] = Σ_j (−1)^j e_{i1} ⋯ ê_{ij} ⋯ e_{ik}
/// ```
///
/// with 1-based j; the same sign convention as the subset differential.
pub fn bracket(word: &[usize]) -> ExtElement {
    assert!(
        word.windows(2).all(|w| w[0] < w[1]),
        "bracket word must be strictly increasing"
    );
    let mut out = ExtElement::zero();
    for j in 0..word.len() {
        let mut dropped = word.to_vec();
        dropped.remove(j);
        let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
        out.add_term(dropped, crate::linalg::rat(sign));
    }
    out
}

/// For a generator g preceding every letter of the word, the identity
///
/// ```text
/// [w] = Σ_j (−1)^{j+1} [g, w∖{w_j}]   (1-based j)
/// ```
///
/// rewrites the alternating sum of any word through alternating sums of
/// words containing g.  Returns the right-hand side; callers compare it with
/// `bracket(word)`.
pub fn bracket_front_reduction(g: usize, word: &[usize]) -> ExtElement {
    assert!(
        !word.is_empty() && g < word[0],
        "g must precede every letter of the word"
    );
    let mut out = ExtElement::zero();
    for j in 0..word.len() {
        let mut w = vec![g];
        w.extend(word.iter().take(j).chain(word.iter().skip(j + 1)));
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out = out.add(&bracket(&w).scale(&crate::linalg::rat(sign)));
    }
    out
}

/// All strictly increasing words of length `len` over `0..n`, in
/// lexicographic order.
pub fn words_of_length(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(len);
    fn rec(n: usize, len: usize, start: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if word.len() == len {
            out.push(word.clone());
            return;
        }
        for i in start..n {
            if n - i < len - word.len() {
                break;
            }
            word.push(i);
            rec(n, len, i + 1, word, out);
            word.pop();
        }
    }
    rec(n, len, 0, &mut word, &mut out);
    out
}

impl fmt::Display for ExtElement {
    /// Renders with 1-based generator numbers, e.g. `e1e2 - e1e3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·", format_rat(c))?;
            if w.is_empty() {
                write!(f, "1")?;
            }
            for i in w {
                write!(f, "e{}", i + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn wedge_sign_from_inversions() {
        let e0 = ExtElement::generator(0);
        let e1 = ExtElement::generator(1);
        assert_eq!(e0.wedge(&e1), ExtElement::monomial(&[0, 1]));
        assert_eq!(e1.wedge(&e0), ExtElement::monomial(&[0, 1]).scale(&rat(-1)));
        assert!(e0.wedge(&e0).is_zero());
    }

    #[test]
    fn wedge_is_associative_on_words() {
        let a = ExtElement::monomial(&[0, 3]);
        let b = ExtElement::monomial(&[1]);
        let c = ExtElement::monomial(&[2, 4]);
        assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn unit_is_neutral() {
        let a = ExtElement::monomial(&[1, 2]).scale(&rat(7));
        assert_eq!(ExtElement::unit().wedge(&a), a);
        assert_eq!(a.wedge(&ExtElement::unit()), a);
    }

    #[test]
    fn front_reduction_reproduces_brackets() {
        // Minimal case: pairs rewritten through the front generator.
        assert_eq!(bracket_front_reduction(0, &[1, 2]), bracket(&[1, 2]));
        // Larger words, with gaps and different front generators.
        for word in [vec![1, 2, 3], vec![2, 4, 5], vec![1, 2, 3, 4], vec![3, 5, 6, 9]] {
            assert_eq!(bracket_front_reduction(0, &word), bracket(&word));
        }
        assert_eq!(bracket_front_reduction(2, &[4, 6, 7]), bracket(&[4, 6, 7]));
    }

    #[test]
    fn bracket_of_pair_and_triple() {
        // [e1, e2] = −e2 + e1 (1-based display; indices 0,1 internally).
        let b = bracket(&[0, 1]);
        assert_eq!(b.coeff(&[1]), rat(-1));
        assert_eq!(b.coeff(&[0]), rat(1));
        // [e1, e2, e3] = −e2e3 + e1e3 − e1e2.
        let b = bracket(&[0, 1, 2]);
        assert_eq!(b.coeff(&[1, 2]), rat(-1));
        assert_eq!(b.coeff(&[0, 2]), rat(1));
        assert_eq!(b.coeff(&[0, 1]), rat(-1));
    }

    #[test]
    fn word_enumeration_is_lexicographic() {
        assert_eq!(
            words_of_length(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(words_of_length(3, 0), vec![Vec::<usize>::new()]);
        assert!(words_of_length(2, 3).is_empty());
    }
}
