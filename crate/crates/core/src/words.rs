//! Words over the doubled alphabet `T ⊔ T⁻¹` and the free group on `T`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::semigroup::FiniteInverseSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    EmptyWord,
    #[error("unknown element name {0:?} in word literal")]
    UnknownName(String),
    #[error("malformed word token {0:?}")]
    BadToken(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// `[t]` or `[t]⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub base: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(base: usize) -> Self {
        Self {
            base,
            sign: Sign::Pos,
        }
    }

    pub fn neg(base: usize) -> Self {
        Self {
            base,
            sign: Sign::Neg,
        }
    }

    pub fn inverse(self) -> Self {
        Self {
            base: self.base,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.base == other.base && self.sign != other.sign
    }

    /// `base^sign` evaluated in `t`.
    pub fn value(self, t: &FiniteInverseSemigroup) -> usize {
        match self.sign {
            Sign::Pos => self.base,
            Sign::Neg => t.inv(self.base),
        }
    }
}

/// An element of the free monoid on the doubled alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
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

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Reverse and flip every sign.
    pub fn involution(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn reduce(&self) -> ReducedWord {
        ReducedWord::from_letters(&self.0)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].cancels(p[1]))
    }
}

impl From<ReducedWord> for Word {
    fn from(w: ReducedWord) -> Self {
        Word(w.0)
    }
}

/// An element of FG(T) in its unique freely reduced form. The empty word is ε.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Self(vec![l])
    }

    /// Single stack pass.
    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Self(stack)
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

    /// Product in FG(T).
    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        let mut stack = self.0.clone();
        for &l in &other.0 {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        ReducedWord(stack)
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `[t]^sign · self · [t]^-sign`, reduced.
    pub fn conjugate(&self, l: Letter) -> ReducedWord {
        ReducedWord::letter(l)
            .mul(self)
            .mul(&ReducedWord::letter(l.inverse()))
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }
}

/// Evaluation of a nonempty word in T.
pub fn phi(t: &FiniteInverseSemigroup, w: &[Letter]) -> Result<usize, WordError> {
    let (first, rest) = w.split_first().ok_or(WordError::EmptyWord)?;
    Ok(rest
        .iter()
        .fold(first.value(t), |acc, l| t.mul(acc, l.value(t))))
}

/// Evaluation in T¹: `None` stands for the adjoined identity, the value of ε.
pub fn nu(t: &FiniteInverseSemigroup, w: &ReducedWord) -> Option<usize> {
    phi(t, w.letters()).ok()
}

/// `x ≤ y` in T¹ where `None` is the adjoined identity (below it: exactly the idempotents).
pub fn leq_adjoined(t: &FiniteInverseSemigroup, x: Option<usize>, y: Option<usize>) -> bool {
    match (x, y) {
        (_, None) => x.is_none_or(|x| t.is_idempotent(x)),
        (None, Some(_)) => false,
        (Some(x), Some(y)) => t.leq(x, y),
    }
}

/// `(t, w)` lies in the cover iff `t ≤ ν(w)`.
pub fn cover_member(t: &FiniteInverseSemigroup, s: usize, w: &ReducedWord) -> bool {
    leq_adjoined(t, Some(s), nu(t, w))
}

/// One rewriting step of the left-to-right collapse of a word.
///
/// `Direct(x, y)` contributes the factor `g(x, y)` and `Inverted(x, y)` the
/// factor `g(x, y)⁻¹` for whatever two-variable map `g` is being folded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollapseStep {
    Direct(usize, usize),
    Inverted(usize, usize),
}

/// The factors met while collapsing a nonempty word to a single letter,
/// together with the first and last head letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapse {
    pub first: usize,
    pub steps: Vec<CollapseStep>,
    pub last: usize,
}

/// Collapse `w` the way the recursive definitions of ξ and τ do:
/// a leading `[x]⁻¹` becomes `[x⁻¹]` (factor `g(x⁻¹, x)⁻¹`), then
/// `[x][y]` becomes `[xy]` (factor `g(x, y)`) and `[x][y]⁻¹` becomes `[xy⁻¹]`
/// (factor `g(xy⁻¹, y)⁻¹`) until one letter remains.
pub fn collapse(t: &FiniteInverseSemigroup, w: &[Letter]) -> Result<Collapse, WordError> {
    let (first, rest) = w.split_first().ok_or(WordError::EmptyWord)?;
    let mut steps = Vec::with_capacity(w.len());
    let mut head = match first.sign {
        Sign::Pos => first.base,
        Sign::Neg => {
            let x = first.base;
            steps.push(CollapseStep::Inverted(t.inv(x), x));
            t.inv(x)
        }
    };
    let start = head;
    for l in rest {
        let y = l.base;
        match l.sign {
            Sign::Pos => {
                steps.push(CollapseStep::Direct(head, y));
                head = t.mul(head, y);
            }
            Sign::Neg => {
                head = t.mul(head, t.inv(y));
                steps.push(CollapseStep::Inverted(head, y));
            }
        }
    }
    Ok(Collapse {
        first: start,
        steps,
        last: head,
    })
}

/// Word literal syntax: `x,y^-1`; the empty string is ε.
pub fn parse_word(t: &FiniteInverseSemigroup, text: &str) -> Result<Word, WordError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Word::empty());
    }
    text.split(',')
        .map(|token| {
            let token = token.trim();
            let (name, sign) = match token.strip_suffix("^-1") {
                Some(name) => (name.trim(), Sign::Neg),
                None => (token, Sign::Pos),
            };
            if name.is_empty() {
                return Err(WordError::BadToken(token.to_string()));
            }
            let base = t
                .index_of(name)
                .ok_or_else(|| WordError::UnknownName(name.to_string()))?;
            Ok(Letter { base, sign })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Word)
}

pub fn render_letters(t: &FiniteInverseSemigroup, w: &[Letter]) -> String {
    let tokens: Vec<String> = w
        .iter()
        .map(|l| match l.sign {
            Sign::Pos => t.name(l.base).to_string(),
            Sign::Neg => format!("{}^-1", t.name(l.base)),
        })
        .collect();
    tokens.join(",")
}

/// A uniformly random word of exactly `len` letters over `order` bases.
pub fn sample_word<R: Rng + ?Sized>(order: usize, len: usize, rng: &mut R) -> Word {
    Word(
        (0..len)
            .map(|_| {
                let base = rng.gen_range(0..order);
                if rng.gen_bool(0.5) {
                    Letter::pos(base)
                } else {
                    Letter::neg(base)
                }
            })
            .collect(),
    )
}

/// A random reduced word whose length is uniform in `0..=max_len`.
pub fn sample_reduced<R: Rng + ?Sized>(order: usize, max_len: usize, rng: &mut R) -> ReducedWord {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = sample_word(order, 1, rng).0[0];
        if letters.last().is_none_or(|&top| !top.cancels(l)) {
            letters.push(l);
        }
    }
    ReducedWord(letters)
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+1",
            Sign::Neg => "-1",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn letters(spec: &[(usize, bool)]) -> Vec<Letter> {
        spec.iter()
            .map(|&(b, p)| if p { Letter::pos(b) } else { Letter::neg(b) })
            .collect()
    }

    #[test]
    fn involution_examples() {
        let w = Word(letters(&[(0, true), (1, false)]));
        assert_eq!(w.involution(), Word(letters(&[(1, true), (0, false)])));
        assert_eq!(Word::empty().involution(), Word::empty());
        assert_eq!(
            Word(vec![Letter::pos(0)]).involution(),
            Word(vec![Letter::neg(0)])
        );
    }

    #[test]
    fn reduction_examples() {
        let (x, y) = (0, 1);
        let w = Word(letters(&[(x, true), (x, false), (y, true)]));
        assert_eq!(w.reduce().letters(), &[Letter::pos(y)]);
        let w = Word(letters(&[(x, true), (y, false)]));
        assert_eq!(w.reduce().letters(), w.letters());
        let w = Word(letters(&[(x, true), (y, true), (y, false), (x, false)]));
        assert!(w.reduce().is_empty());
    }

    #[test]
    fn phi_examples() {
        let g = fixtures::z2();
        assert_eq!(phi(&g, &[Letter::pos(1)]), Ok(1));
        assert_eq!(phi(&g, &[Letter::pos(1), Letter::pos(1)]), Ok(0));
        assert_eq!(phi(&g, &[]), Err(WordError::EmptyWord));
    }

    #[test]
    fn nu_and_membership() {
        let g = fixtures::z2();
        assert_eq!(nu(&g, &ReducedWord::empty()), None);
        assert!(cover_member(&g, 0, &ReducedWord::empty()));
        assert!(!cover_member(&g, 1, &ReducedWord::empty()));
        assert!(cover_member(&g, 1, &ReducedWord::letter(Letter::pos(1))));
        let c = fixtures::chain2();
        assert!(cover_member(&c, 1, &ReducedWord::letter(Letter::pos(0))));
        assert!(!cover_member(&c, 0, &ReducedWord::letter(Letter::pos(1))));
    }

    #[test]
    fn parse_and_render_round_trip() {
        let g = fixtures::z2();
        let w = parse_word(&g, "g,g^-1,1").unwrap();
        assert_eq!(w.0, vec![Letter::pos(1), Letter::neg(1), Letter::pos(0)]);
        assert_eq!(render_letters(&g, &w.0), "g,g^-1,1");
        assert_eq!(parse_word(&g, "").unwrap(), Word::empty());
        assert!(matches!(
            parse_word(&g, "h"),
            Err(WordError::UnknownName(_))
        ));
        assert!(matches!(
            parse_word(&g, "g,,g"),
            Err(WordError::BadToken(_))
        ));
    }

    #[test]
    fn collapse_tracks_heads() {
        let t = fixtures::z2_chain2();
        let w = [Letter::neg(3), Letter::pos(2), Letter::neg(1)];
        let c = collapse(&t, &w).unwrap();
        assert_eq!(c.first, t.inv(3));
        assert_eq!(c.steps.len(), 3);
        assert_eq!(c.last, phi(&t, &w).unwrap());
    }

    fn word_strategy(alphabet: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..alphabet, any::<bool>()), 0..=max_len).prop_map(|v| {
            Word(
                v.into_iter()
                    .map(|(b, p)| if p { Letter::pos(b) } else { Letter::neg(b) })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(w in word_strategy(3, 12)) {
            let r = w.reduce();
            prop_assert_eq!(r.as_word().reduce(), r.clone());
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(r.len() == w.len(), w.is_reduced());
            prop_assert!(r.as_word().is_reduced());
        }

        #[test]
        fn involution_is_an_involution(w in word_strategy(4, 10)) {
            prop_assert_eq!(w.involution().involution(), w.clone());
            prop_assert_eq!(w.involution().reduce(), w.reduce().inverse());
        }

        #[test]
        fn reduce_respects_concatenation(u in word_strategy(3, 6), v in word_strategy(3, 6)) {
            prop_assert_eq!(u.concat(&v).reduce(), u.reduce().mul(&v.reduce()));
        }

        #[test]
        fn phi_is_multiplicative(u in word_strategy(4, 4), v in word_strategy(4, 4)) {
            let t = fixtures::z2_chain2();
            prop_assume!(!u.is_empty() && !v.is_empty());
            let uv = u.concat(&v);
            prop_assert_eq!(
                phi(&t, uv.letters()).unwrap(),
                t.mul(phi(&t, u.letters()).unwrap(), phi(&t, v.letters()).unwrap())
            );
            prop_assert_eq!(
                phi(&t, u.involution().letters()).unwrap(),
                t.inv(phi(&t, u.letters()).unwrap())
            );
        }

        #[test]
        fn nu_is_submultiplicative(u in word_strategy(4, 5), v in word_strategy(4, 5)) {
            for t in [fixtures::z2_chain2(), fixtures::symmetric_inverse_monoid2()] {
                let alphabet = |w: &Word| Word(w.0.iter().map(|l| Letter { base: l.base % t.len(), sign: l.sign }).collect());
                let (u, v) = (alphabet(&u).reduce(), alphabet(&v).reduce());
                let product = match (nu(&t, &u), nu(&t, &v)) {
                    (None, x) | (x, None) => x,
                    (Some(x), Some(y)) => Some(t.mul(x, y)),
                };
                let uv = u.mul(&v);
                prop_assert!(leq_adjoined(&t, product, nu(&t, &uv)));
                if uv.len() == u.len() + v.len() {
                    prop_assert_eq!(product, nu(&t, &uv));
                }
            }
        }
    }
}
