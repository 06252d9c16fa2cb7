//! Words over named generators and the plain-text presentation format.
//!
//! A presentation file looks like
//!
//! ```text
//! # rotation group of the 4-simplex
//! gens s1 s2 s3
//! rel s1^3
//! rel s2^3
//! rel s3^3
//! rel (s1 s2)^2
//! rel (s2 s3)^2
//! rel (s1 s2 s3)^2
//! sigma s1, s2, s3
//! ```
//!
//! `rel u = v` is accepted and stored as the relator `u v^-1`. On `sigma`/`rho`
//! lines the distinguished words are separated by commas; without commas each
//! top-level term is one word, so `sigma s1 s2 s3` declares three generators.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// One letter of a free-group word: a generator index together with a sign.
///
/// Encoded as `2 * generator + (1 if inverse)`, which is also the column of
/// the letter in a coset table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// A word in the free group. Not automatically reduced; see [`Word::reduced`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(Vec<Letter>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstitutionError {
    #[error("no image given for generator {generator} ({available} images supplied)")]
    MissingImage { generator: usize, available: usize },
    #[error("expected {expected} images, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

impl Word {
    /// The empty word ε.
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    pub fn generator_inverse(g: usize) -> Self {
        Word(vec![Letter::new(g, true)])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from signed generator indices: `+(g+1)` for `g`, `-(g+1)`
    /// for `g^-1`. Handy in tests.
    pub fn from_signed(signed: &[i32]) -> Self {
        Word(
            signed
                .iter()
                .map(|&s| {
                    assert!(s != 0, "generator numbers in signed notation start at 1");
                    Letter::new(s.unsigned_abs() as usize - 1, s < 0)
                })
                .collect(),
        )
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

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    /// Free reduction: cancels adjacent `x x^-1` pairs until none remain.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    /// Freely and cyclically reduced form (used by the coset enumerator).
    pub fn cyclically_reduced(&self) -> Word {
        let w = self.reduced().0;
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self` repeated `k` times; negative `k` repeats the inverse. Unreduced.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// Replaces every letter `g^±1` by `images[g]^±1` and freely reduces.
    pub fn substitute(&self, images: &[Word]) -> Result<Word, SubstitutionError> {
        let mut out = Vec::new();
        for &l in &self.0 {
            let img = images
                .get(l.generator())
                .ok_or(SubstitutionError::MissingImage {
                    generator: l.generator(),
                    available: images.len(),
                })?;
            if l.is_inverse() {
                out.extend(img.0.iter().rev().map(|x| x.inverse()));
            } else {
                out.extend_from_slice(&img.0);
            }
        }
        Ok(Word(out).reduced())
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(mut self, rhs: Word) -> Word {
        self.0.extend(rhs.0);
        self
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Concatenates a list of words (unreduced).
pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
    words
        .into_iter()
        .flat_map(|w| w.0.iter().copied())
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSymbol {
    pub name: String,
    pub index: usize,
}

/// Which role the distinguished words of a presentation play.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DistinguishedKind {
    /// Rotation generators σ₁, σ₂, ... of a chiral or rotary polytope.
    Sigma,
    /// Involutory generators ρ₀, ρ₁, ... of a string C-group.
    Rho,
}

impl DistinguishedKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DistinguishedKind::Sigma => "sigma",
            DistinguishedKind::Rho => "rho",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Distinguished {
    pub kind: DistinguishedKind,
    pub words: Vec<Word>,
}

/// Generators, relators and optional distinguished generator words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generators: Vec<GeneratorSymbol>,
    relators: Vec<Word>,
    distinguished: Option<Distinguished>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: undeclared generator {name}")]
    UndeclaredGenerator { line: usize, name: String },
    #[error("line {line}: duplicate generator name {name}")]
    DuplicateGenerator { line: usize, name: String },
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("relator {relator} uses generator index {generator}, only {count} declared")]
    RelatorOutOfRange {
        relator: usize,
        generator: usize,
        count: usize,
    },
    #[error("{kind} line needs {allowed} words, got {got}")]
    DistinguishedCount {
        kind: &'static str,
        allowed: &'static str,
        got: usize,
    },
    #[error("missing `gens` line")]
    MissingGens,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_distinguished(d: &Distinguished) -> Result<(), PresentationError> {
    let (ok, allowed) = match d.kind {
        DistinguishedKind::Sigma => ((2..=4).contains(&d.words.len()), "2 to 4"),
        DistinguishedKind::Rho => ((3..=4).contains(&d.words.len()), "3 or 4"),
    };
    if ok {
        Ok(())
    } else {
        Err(PresentationError::DistinguishedCount {
            kind: d.kind.keyword(),
            allowed,
            got: d.words.len(),
        })
    }
}

impl Presentation {
    /// Builds a presentation, reducing relators and checking names and indices.
    pub fn new<S: AsRef<str>>(
        names: &[S],
        relators: Vec<Word>,
        distinguished: Option<Distinguished>,
    ) -> Result<Self, PresentationError> {
        let mut generators = Vec::with_capacity(names.len());
        for (index, name) in names.iter().enumerate() {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(PresentationError::InvalidName(name.to_string()));
            }
            if generators.iter().any(|g: &GeneratorSymbol| g.name == name) {
                return Err(PresentationError::DuplicateGenerator {
                    line: 0,
                    name: name.to_string(),
                });
            }
            generators.push(GeneratorSymbol {
                name: name.to_string(),
                index,
            });
        }
        let count = generators.len();
        let mut reduced = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            if let Some(g) = r.max_generator().filter(|&g| g >= count) {
                return Err(PresentationError::RelatorOutOfRange {
                    relator: i,
                    generator: g,
                    count,
                });
            }
            reduced.push(r.reduced());
        }
        if let Some(d) = &distinguished {
            check_distinguished(d)?;
            for w in &d.words {
                if let Some(g) = w.max_generator().filter(|&g| g >= count) {
                    return Err(PresentationError::RelatorOutOfRange {
                        relator: usize::MAX,
                        generator: g,
                        count,
                    });
                }
            }
        }
        Ok(Presentation {
            generators,
            relators: reduced,
            distinguished: distinguished.map(|d| Distinguished {
                kind: d.kind,
                words: d.words.into_iter().map(|w| w.reduced()).collect(),
            }),
        })
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn distinguished(&self) -> Option<&Distinguished> {
        self.distinguished.as_ref()
    }

    /// A copy with extra relators appended.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Presentation {
        let mut p = self.clone();
        p.relators.extend(extra.into_iter().map(|w| w.reduced()));
        p
    }

    pub fn with_distinguished(
        &self,
        distinguished: Option<Distinguished>,
    ) -> Result<Presentation, PresentationError> {
        if let Some(d) = &distinguished {
            check_distinguished(d)?;
        }
        let mut p = self.clone();
        p.distinguished = distinguished.map(|d| Distinguished {
            kind: d.kind,
            words: d.words.into_iter().map(|w| w.reduced()).collect(),
        });
        Ok(p)
    }

    /// Substitution with an image for every generator of this presentation.
    pub fn substitute(&self, w: &Word, images: &[Word]) -> Result<Word, SubstitutionError> {
        if images.len() != self.generators.len() {
            return Err(SubstitutionError::LengthMismatch {
                expected: self.generators.len(),
                got: images.len(),
            });
        }
        w.substitute(images)
    }

    /// Parses a single word in this presentation's generators. Not reduced.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let mut p = WordParser::new(text, 0, &self.generators);
        let w = p.word()?;
        p.expect_end()?;
        Ok(w)
    }

    /// Renders a word using generator names, collapsing runs into powers.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "()".to_string();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l.is_inverse() { -run } else { run };
            let name = &self.generators[l.generator()].name;
            parts.push(if exp == 1 {
                name.clone()
            } else {
                format!("{name}^{exp}")
            });
            i = j;
        }
        parts.join(" ")
    }

    /// Serializes to the text format read by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut out = format!("gens {}\n", self.generator_names().join(" "));
        for r in &self.relators {
            out.push_str(&format!("rel {}\n", self.format_word(r)));
        }
        if let Some(d) = &self.distinguished {
            let words: Vec<String> = d
                .words
                .iter()
                .map(|w| {
                    if w.len() > 1 && w.letters().iter().any(|&l| l != w.letters()[0]) {
                        format!("({})", self.format_word(w))
                    } else {
                        self.format_word(w)
                    }
                })
                .collect();
            out.push_str(&format!("{} {}\n", d.kind.keyword(), words.join(", ")));
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Name(String),
    Int(i64),
    Open,
    Close,
    Caret,
    Comma,
    Equals,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>, PresentationError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                tokens.push(Token::Open);
                i += 1;
            }
            ')' => {
                tokens.push(Token::Close);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            ',' => {
                tokens.push(Token::Comma);
                i += 1;
            }
            '=' => {
                tokens.push(Token::Equals);
                i += 1;
            }
            '-' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse::<i64>().map_err(|_| PresentationError::Syntax {
                    line,
                    message: format!("bad integer {s:?}"),
                })?;
                tokens.push(Token::Int(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token::Name(chars[start..i].iter().collect()));
            }
            other => {
                return Err(PresentationError::Syntax {
                    line,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(tokens)
}

struct WordParser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
    generators: &'a [GeneratorSymbol],
    tokenize_error: Option<PresentationError>,
}

impl<'a> WordParser<'a> {
    fn new(text: &str, line: usize, generators: &'a [GeneratorSymbol]) -> Self {
        let (tokens, tokenize_error) = match tokenize(text, line) {
            Ok(t) => (t, None),
            Err(e) => (Vec::new(), Some(e)),
        };
        WordParser {
            tokens,
            pos: 0,
            line,
            generators,
            tokenize_error,
        }
    }

    fn syntax(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Syntax {
            line: self.line,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn at_term_start(&self) -> bool {
        matches!(self.peek(), Some(Token::Name(_)) | Some(Token::Open))
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        if let Some(e) = self.tokenize_error.take() {
            return Err(e);
        }
        let mut w = Word::identity();
        while self.at_term_start() {
            w = w * self.term()?;
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, PresentationError> {
        let base = match self.tokens.get(self.pos).cloned() {
            Some(Token::Name(name)) => {
                self.pos += 1;
                let g = self.generators.iter().position(|s| s.name == name).ok_or(
                    PresentationError::UndeclaredGenerator {
                        line: self.line,
                        name,
                    },
                )?;
                Word::generator(g)
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.syntax("expected a generator name or `(`")),
        };
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(&Token::Int(k)) => {
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                _ => Err(self.syntax("expected an integer exponent after `^`")),
            }
        } else {
            Ok(base)
        }
    }

    fn expect_end(&self) -> Result<(), PresentationError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.syntax(format!("unexpected token {t:?}"))),
        }
    }

    /// Distinguished word list: comma-separated, or one word per top-level term.
    fn word_list(&mut self) -> Result<Vec<Word>, PresentationError> {
        if let Some(e) = self.tokenize_error.take() {
            return Err(e);
        }
        let mut words = Vec::new();
        if self.tokens.contains(&Token::Comma) {
            loop {
                words.push(self.word()?);
                match self.peek() {
                    Some(Token::Comma) => self.pos += 1,
                    None => break,
                    Some(t) => return Err(self.syntax(format!("unexpected token {t:?}"))),
                }
            }
        } else {
            while self.at_term_start() {
                words.push(self.term()?);
            }
            self.expect_end()?;
        }
        Ok(words)
    }
}

/// Parses the presentation file format.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut generators: Option<Vec<GeneratorSymbol>> = None;
    let mut relators = Vec::new();
    let mut distinguished = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        match keyword {
            "gens" => {
                if generators.is_some() {
                    return Err(PresentationError::Syntax {
                        line,
                        message: "second `gens` line".into(),
                    });
                }
                let mut gens: Vec<GeneratorSymbol> = Vec::new();
                for name in rest.split_whitespace() {
                    if !valid_name(name) {
                        return Err(PresentationError::Syntax {
                            line,
                            message: format!("invalid generator name {name:?}"),
                        });
                    }
                    if gens.iter().any(|g| g.name == name) {
                        return Err(PresentationError::DuplicateGenerator {
                            line,
                            name: name.to_string(),
                        });
                    }
                    gens.push(GeneratorSymbol {
                        name: name.to_string(),
                        index: gens.len(),
                    });
                }
                generators = Some(gens);
            }
            "rel" | "sigma" | "rho" => {
                let gens = generators.as_ref().ok_or(PresentationError::Syntax {
                    line,
                    message: "`gens` must be the first line".into(),
                })?;
                let mut parser = WordParser::new(rest, line, gens);
                if keyword == "rel" {
                    let lhs = parser.word()?;
                    let rel = if parser.peek() == Some(&Token::Equals) {
                        parser.pos += 1;
                        let rhs = parser.word()?;
                        lhs * rhs.inverse()
                    } else {
                        lhs
                    };
                    parser.expect_end()?;
                    relators.push(rel.reduced());
                } else {
                    if distinguished.is_some() {
                        return Err(PresentationError::Syntax {
                            line,
                            message: "more than one `sigma`/`rho` line".into(),
                        });
                    }
                    let kind = if keyword == "sigma" {
                        DistinguishedKind::Sigma
                    } else {
                        DistinguishedKind::Rho
                    };
                    let words = parser.word_list()?;
                    let d = Distinguished {
                        kind,
                        words: words.into_iter().map(|w| w.reduced()).collect(),
                    };
                    check_distinguished(&d).map_err(|e| PresentationError::Syntax {
                        line,
                        message: e.to_string(),
                    })?;
                    distinguished = Some(d);
                }
            }
            other => {
                return Err(PresentationError::Syntax {
                    line,
                    message: format!("unknown keyword {other:?}"),
                })
            }
        }
    }
    let generators = generators.ok_or(PresentationError::MissingGens)?;
    Ok(Presentation {
        generators,
        relators,
        distinguished,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &[i32]) -> Word {
        Word::from_signed(s)
    }

    #[test]
    fn parse_power() {
        let p = parse_presentation("gens a\nrel a^4").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators(), &[w(&[1, 1, 1, 1])]);
    }

    #[test]
    fn parse_parenthesised_power() {
        let p = parse_presentation("gens s1 s2\nrel (s1 s2)^2").unwrap();
        assert_eq!(p.relators(), &[w(&[1, 2, 1, 2])]);
    }

    #[test]
    fn parse_undeclared() {
        let err = parse_presentation("gens s1\nrel s2^2").unwrap_err();
        assert_eq!(
            err,
            PresentationError::UndeclaredGenerator {
                line: 2,
                name: "s2".into()
            }
        );
    }

    #[test]
    fn parse_duplicate_and_syntax() {
        assert!(matches!(
            parse_presentation("gens a a"),
            Err(PresentationError::DuplicateGenerator { line: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("gens a\nrel (a"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("gens a\nrel a^"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("rel a"),
            Err(PresentationError::Syntax { line: 1, .. })
        ));
        assert_eq!(
            parse_presentation("# nothing"),
            Err(PresentationError::MissingGens)
        );
    }

    #[test]
    fn parse_equation_and_negative_exponent() {
        let p = parse_presentation("gens a b\nrel a b = b a\nrel b^-2 # comment").unwrap();
        assert_eq!(p.relators()[0], w(&[1, 2, -1, -2]));
        assert_eq!(p.relators()[1], w(&[-2, -2]));
    }

    #[test]
    fn parse_distinguished() {
        let p = parse_presentation("gens s1 s2 s3\nsigma s1 s2 s3").unwrap();
        let d = p.distinguished().unwrap();
        assert_eq!(d.kind, DistinguishedKind::Sigma);
        assert_eq!(d.words, vec![w(&[1]), w(&[2]), w(&[3])]);

        let p = parse_presentation("gens a b\nsigma a b^-1, (a b)^2 a").unwrap();
        let d = p.distinguished().unwrap();
        assert_eq!(d.words, vec![w(&[1, -2]), w(&[1, 2, 1, 2, 1])]);

        assert!(parse_presentation("gens a b\nrho a b").is_err());
        assert!(parse_presentation("gens a\nsigma a").is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w(&[1, -1]).reduced(), Word::identity());
        assert_eq!(w(&[1, 2, -2, 3]).reduced(), w(&[1, 3]));
        assert_eq!(Word::identity().reduced(), Word::identity());
        assert_eq!(w(&[2, 1, 3, -3, -1, 2]).reduced(), w(&[2, 2]));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w(&[1, 2]).inverse(), w(&[-2, -1]));
        assert_eq!(Word::identity().inverse(), Word::identity());
        assert_eq!(w(&[-1]).inverse(), w(&[1]));
    }

    #[test]
    fn substitute_examples() {
        let images = [w(&[2]), w(&[1])];
        assert_eq!(w(&[1, 2]).substitute(&images).unwrap(), w(&[2, 1]));
        let images = [w(&[2, 3]), w(&[1]), w(&[3])];
        assert_eq!(w(&[-1]).substitute(&images).unwrap(), w(&[-3, -2]));
        assert_eq!(
            Word::identity().substitute(&images).unwrap(),
            Word::identity()
        );
        assert!(matches!(
            w(&[3]).substitute(&[w(&[1])]),
            Err(SubstitutionError::MissingImage { generator: 2, .. })
        ));
        let p = parse_presentation("gens a b").unwrap();
        assert_eq!(
            p.substitute(&w(&[1]), &[w(&[1])]),
            Err(SubstitutionError::LengthMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w(&[-2, 1, 1, 2]).cyclically_reduced(), w(&[1, 1]));
        assert_eq!(w(&[1, -1]).cyclically_reduced(), Word::identity());
    }

    #[test]
    fn serialize_round_trip_example() {
        let text = "gens s1 s2 s3\nrel s1^4\nrel (s1 s2)^2\nrel s3^-1 s1\nsigma s1, s2 s3, ()\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }

    fn arb_word(gens: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, any::<bool>()), 0..24)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        (
            prop::collection::vec(arb_word(3), 0..5),
            prop::option::of((any::<bool>(), prop::collection::vec(arb_word(3), 3..=4))),
        )
            .prop_map(|(rels, dist)| {
                let d = dist.map(|(sigma, words)| Distinguished {
                    kind: if sigma {
                        DistinguishedKind::Sigma
                    } else {
                        DistinguishedKind::Rho
                    },
                    words,
                });
                Presentation::new(&["x", "y_2", "Z"], rels, d).unwrap()
            })
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(v in arb_word(4)) {
            let r = v.reduced();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.reduced(), r);
        }

        #[test]
        fn word_times_inverse_is_trivial(v in arb_word(4)) {
            prop_assert!((&v * &v.inverse()).reduced().is_empty());
        }

        #[test]
        fn identity_substitution(v in arb_word(4)) {
            let images: Vec<Word> = (0..4).map(Word::generator).collect();
            let r = v.reduced();
            prop_assert_eq!(r.substitute(&images).unwrap(), r);
        }

        #[test]
        fn text_round_trip(p in arb_presentation()) {
            let back = parse_presentation(&p.to_text()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
