//! Freely reduced words over `{a, b, a⁻¹, b⁻¹}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{parse_err, Error, Result};

/// Letters in the fixed order `a < b < a⁻¹ < b⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    AInv,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::B => Letter::BInv,
            Letter::AInv => Letter::A,
            Letter::BInv => Letter::B,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::AInv => 'A',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'A' => Some(Letter::AInv),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }
}

/// A freely reduced word. Ordered by length, then lexicographically by letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn a() -> Self {
        Word::letter(Letter::A)
    }

    pub fn b() -> Self {
        Word::letter(Letter::B)
    }

    /// Freely reduces the input.
    pub fn from_letters(it: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in it {
            w.push(l);
        }
        w
    }

    /// Appends with cancellation.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
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

    pub fn mul(&self, o: &Word) -> Word {
        let mut w = self.clone();
        for &l in &o.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `g w g⁻¹`.
    pub fn conj_by(&self, g: &Word) -> Word {
        g.mul(self).mul(&g.inverse())
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Substitutes a word for each letter (images of `a` and `b`).
    pub fn substitute(&self, a: &Word, b: &Word) -> Word {
        let (ai, bi) = (a.inverse(), b.inverse());
        let mut w = Word::empty();
        for l in &self.0 {
            let img = match l {
                Letter::A => a,
                Letter::B => b,
                Letter::AInv => &ai,
                Letter::BInv => &bi,
            };
            w = w.mul(img);
        }
        w
    }

    /// Exponent sums `(#a - #a⁻¹, #b - #b⁻¹)`.
    pub fn exponent_sums(&self) -> (i64, i64) {
        self.0.iter().fold((0, 0), |(u, v), l| match l {
            Letter::A => (u + 1, v),
            Letter::AInv => (u - 1, v),
            Letter::B => (u, v + 1),
            Letter::BInv => (u, v - 1),
        })
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sequence(&mut self) -> Result<Word> {
        let mut w = Word::empty();
        while let Some(c) = self.peek() {
            if c == ',' || c == ']' || c == ')' {
                break;
            }
            let atom = self.atom()?;
            let atom = self.exponent(atom)?;
            w = w.mul(&atom);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word> {
        let c = self.peek().expect("caller checked");
        self.pos += 1;
        if let Some(l) = Letter::from_char(c) {
            return Ok(Word::letter(l));
        }
        match c {
            '1' => Ok(Word::empty()),
            '[' => {
                let u = self.sequence()?;
                self.expect(',')?;
                let v = self.sequence()?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            '(' => {
                let u = self.sequence()?;
                self.expect(')')?;
                Ok(u)
            }
            _ => parse_err(format!("unexpected '{c}' in word '{}'", self.src)),
        }
    }

    fn exponent(&mut self, w: Word) -> Result<Word> {
        if self.peek() != Some('^') {
            return Ok(w);
        }
        self.pos += 1;
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let n: i64 = digits.parse().map_err(|_| Error::Parse(format!("bad exponent in '{}'", self.src)))?;
        Ok(w.pow(if neg { -n } else { n }))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            parse_err(format!("expected '{c}' in word '{}'", self.src))
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Letters `a b A B` (capitals are inverses), `1`, commutators `[u,v]`, parentheses and
    /// integer powers `^n`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, src: s };
        if p.chars.is_empty() {
            return parse_err("empty word");
        }
        let w = p.sequence()?;
        if p.pos != p.chars.len() {
            return parse_err(format!("trailing input in word '{s}'"));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let w: Word = "a b A B".parse().unwrap();
        assert_eq!(w.to_string(), "abAB");
        assert_eq!("[a,b]".parse::<Word>().unwrap(), w);
        assert_eq!("[[a,b],b]".parse::<Word>().unwrap().len(), 8);
        assert_eq!("aA".parse::<Word>().unwrap(), Word::empty());
        assert_eq!("1".parse::<Word>().unwrap().to_string(), "1");
        assert_eq!("(ab)^-2".parse::<Word>().unwrap().to_string(), "BABA");
        assert!("abc".parse::<Word>().is_err());
        assert!("[a,b".parse::<Word>().is_err());
    }

    #[test]
    fn ordering_is_shortlex() {
        let mut ws: Vec<Word> = ["B", "ab", "a", "A", "b"].iter().map(|s| s.parse().unwrap()).collect();
        ws.sort();
        let s: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, ["a", "b", "A", "B", "ab"]);
    }

    #[test]
    fn inverse_and_sums() {
        let w: Word = "abbA".parse().unwrap();
        assert!(w.mul(&w.inverse()).is_empty());
        assert_eq!(w.exponent_sums(), (0, 2));
    }
}
