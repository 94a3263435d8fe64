//! Square classes of a local field as an F2 vector space with its Hilbert pairing.

use std::fmt;

use crate::f2;
use crate::{Error, Result, Sign};

/// An element of `k^x / k^x2`, as an exponent vector over the labelled generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SquareClass(pub u64);

impl SquareClass {
    pub const IDENTITY: SquareClass = SquareClass(0);

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for SquareClass {
    type Output = SquareClass;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: SquareClass) -> SquareClass {
        SquareClass(self.0 ^ rhs.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClassGroup {
    labels: Vec<String>,
    gram: Vec<u64>,
    minus_one: SquareClass,
}

impl SquareClassGroup {
    /// `gram[i]` holds row i of the pairing matrix as exponent bits:
    /// `(g_i, g_j) = (-1)^(gram[i] >> j & 1)`.
    pub fn new(labels: Vec<String>, gram: Vec<u64>, minus_one: SquareClass) -> Result<SquareClassGroup> {
        let r = labels.len();
        if r > 16 {
            return Err(Error::Validation(format!("square-class rank {r} exceeds 16")));
        }
        if gram.len() != r {
            return Err(Error::Validation(format!(
                "pairing matrix has {} rows for {r} generators",
                gram.len()
            )));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label == "1" || label.contains('*') {
                return Err(Error::Validation(format!("bad generator label {label:?}")));
            }
            if labels[..i].contains(label) {
                return Err(Error::Validation(format!("duplicate generator label {label:?}")));
            }
        }
        for i in 0..r {
            if gram[i] & !f2::mask(r) != 0 {
                return Err(Error::Validation(format!("pairing row {i} has entries past column {r}")));
            }
            for j in 0..r {
                if (gram[i] >> j & 1) != (gram[j] >> i & 1) {
                    return Err(Error::Validation(format!("pairing is not symmetric at ({i}, {j})")));
                }
            }
        }
        if f2::rank(&gram) != r {
            return Err(Error::Validation("pairing is degenerate".into()));
        }
        if minus_one.0 & !f2::mask(r) != 0 {
            return Err(Error::Validation("class of -1 lies outside the group".into()));
        }
        Ok(SquareClassGroup { labels, gram, minus_one })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn order(&self) -> u64 {
        1 << self.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[u64] {
        &self.gram
    }

    pub fn minus_one(&self) -> SquareClass {
        self.minus_one
    }

    pub fn contains(&self, x: SquareClass) -> bool {
        x.0 & !f2::mask(self.rank()) == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = SquareClass> {
        (0..self.order()).map(SquareClass)
    }

    fn image(&self, d: SquareClass) -> u64 {
        f2::bits(d.0).fold(0, |acc, i| acc ^ self.gram[i])
    }

    /// The Hilbert pairing `(a, b)`.
    pub fn pairing(&self, a: SquareClass, b: SquareClass) -> Sign {
        Sign::from_parity(f2::dot(a.0, self.image(b)))
    }

    /// The character `x -> (x, d)`.
    pub fn hilbert_character(&self, d: SquareClass) -> QuadraticCharacter {
        QuadraticCharacter { functional: self.image(d), rank: self.rank() as u8 }
    }

    /// Every quadratic character, indexed by the class it pairs with.
    pub fn characters(&self) -> impl Iterator<Item = QuadraticCharacter> + '_ {
        self.elements().map(|d| self.hilbert_character(d))
    }

    pub fn generator(&self, label: &str) -> Option<SquareClass> {
        self.labels.iter().position(|l| l == label).map(|i| SquareClass(1 << i))
    }

    /// Parses `1`, `-1`, or a `*`-separated product of generator labels.
    pub fn parse(&self, s: &str) -> Result<SquareClass> {
        let s = s.trim();
        if s == "1" {
            return Ok(SquareClass::IDENTITY);
        }
        if let Some(g) = self.generator(s) {
            return Ok(g);
        }
        if s == "-1" {
            return Ok(self.minus_one);
        }
        let mut x = SquareClass::IDENTITY;
        for part in s.split('*') {
            let part = part.trim();
            let g = match self.generator(part) {
                Some(g) => g,
                None if part == "-1" => self.minus_one,
                None if part == "1" => SquareClass::IDENTITY,
                None => return Err(Error::Parse(format!("unknown square class {part:?} in {s:?}"))),
            };
            x = x + g;
        }
        Ok(x)
    }

    pub fn format(&self, x: SquareClass) -> String {
        if x.is_identity() {
            return "1".into();
        }
        f2::bits(x.0)
            .map(|i| self.labels.get(i).cloned().unwrap_or_else(|| format!("g{i}")))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A character of the square-class group, `x -> (-1)^<functional, x>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticCharacter {
    functional: u64,
    rank: u8,
}

/// Whether a conjugate-dual determinant is trivial on the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restriction {
    TrivialOnBase,
    NontrivialOnBase,
}

impl QuadraticCharacter {
    pub fn trivial(rank: usize) -> QuadraticCharacter {
        QuadraticCharacter { functional: 0, rank: rank as u8 }
    }

    pub fn from_functional(functional: u64, rank: usize) -> Result<QuadraticCharacter> {
        if functional & !f2::mask(rank) != 0 {
            return Err(Error::Validation("character functional exceeds group rank".into()));
        }
        Ok(QuadraticCharacter { functional, rank: rank as u8 })
    }

    pub fn functional(self) -> u64 {
        self.functional
    }

    pub fn rank(self) -> usize {
        self.rank as usize
    }

    pub fn is_trivial(self) -> bool {
        self.functional == 0
    }

    pub fn eval(self, x: SquareClass) -> Result<Sign> {
        if x.0 & !f2::mask(self.rank()) != 0 {
            return Err(Error::Domain(format!(
                "square class {:#b} lies outside a group of rank {}",
                x.0, self.rank
            )));
        }
        Ok(self.value(x))
    }

    /// Evaluation without the domain check; bits past the rank are ignored.
    pub fn value(self, x: SquareClass) -> Sign {
        Sign::from_parity(f2::dot(self.functional, x.0))
    }

    pub fn pow(self, n: u64) -> QuadraticCharacter {
        if n.is_multiple_of(2) {
            QuadraticCharacter::trivial(self.rank())
        } else {
            self
        }
    }

    pub fn restriction(self) -> Restriction {
        if self.is_trivial() {
            Restriction::TrivialOnBase
        } else {
            Restriction::NontrivialOnBase
        }
    }
}

impl std::ops::Mul for QuadraticCharacter {
    type Output = QuadraticCharacter;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: QuadraticCharacter) -> QuadraticCharacter {
        QuadraticCharacter { functional: self.functional ^ rhs.functional, rank: self.rank.max(rhs.rank) }
    }
}

/// An additive-character orbit: a named base translated by a square class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsiClass {
    pub base: String,
    pub shift: SquareClass,
}

impl PsiClass {
    pub fn new(base: impl Into<String>) -> PsiClass {
        PsiClass { base: base.into(), shift: SquareClass::IDENTITY }
    }

    pub fn translate(&self, a: SquareClass) -> PsiClass {
        PsiClass { base: self.base.clone(), shift: self.shift + a }
    }

    pub fn same_base(&self, other: &PsiClass) -> bool {
        self.base == other.base
    }

    /// Renders as `psi` or `psi@u*pi`.
    pub fn render(&self, group: &SquareClassGroup) -> String {
        if self.shift.is_identity() {
            self.base.clone()
        } else {
            format!("{}@{}", self.base, group.format(self.shift))
        }
    }

    pub fn parse(s: &str, group: &SquareClassGroup) -> Result<PsiClass> {
        let (base, shift) = match s.split_once('@') {
            Some((b, c)) => (b.trim(), group.parse(c)?),
            None => (s.trim(), SquareClass::IDENTITY),
        };
        if base.is_empty() {
            return Err(Error::Parse(format!("empty additive character name in {s:?}")));
        }
        Ok(PsiClass { base: base.to_string(), shift })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    PadicOdd { q_mod_4: u8 },
    Real,
    Complex,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ramification {
    Inert,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    Trivial,
    Quadratic { ramification: Ramification, disc: SquareClass },
    Split,
}

/// A local field (or a quadratic pair `k/k0`, modelled over `k0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFieldModel {
    kind: FieldKind,
    classes: SquareClassGroup,
    involution: Involution,
}

impl LocalFieldModel {
    pub fn padic_odd(q_mod_4: u8) -> Result<LocalFieldModel> {
        let pi_pi = match q_mod_4 {
            1 => 0,
            3 => 1,
            other => return Err(Error::Validation(format!("q mod 4 must be 1 or 3, got {other}"))),
        };
        let minus_one = if q_mod_4 == 1 { SquareClass::IDENTITY } else { SquareClass(0b01) };
        let classes = SquareClassGroup::new(vec!["u".into(), "pi".into()], vec![0b10, 0b01 | pi_pi << 1], minus_one)?;
        Ok(LocalFieldModel { kind: FieldKind::PadicOdd { q_mod_4 }, classes, involution: Involution::Trivial })
    }

    pub fn real() -> LocalFieldModel {
        let classes = SquareClassGroup::new(vec!["-1".into()], vec![0b1], SquareClass(1)).expect("real model");
        LocalFieldModel { kind: FieldKind::Real, classes, involution: Involution::Trivial }
    }

    pub fn complex() -> LocalFieldModel {
        let classes = SquareClassGroup::new(vec![], vec![], SquareClass::IDENTITY).expect("complex model");
        LocalFieldModel { kind: FieldKind::Complex, classes, involution: Involution::Trivial }
    }

    pub fn custom(classes: SquareClassGroup) -> LocalFieldModel {
        LocalFieldModel { kind: FieldKind::Custom, classes, involution: Involution::Trivial }
    }

    /// The quadratic extension of the given ramification with its standard discriminant:
    /// `u` for the unramified extension, `pi` for the ramified one, `-1` for C/R.
    pub fn with_quadratic_extension(self, ramification: Ramification) -> Result<LocalFieldModel> {
        let disc = match (self.kind, ramification) {
            (FieldKind::PadicOdd { .. }, Ramification::Inert) => SquareClass(0b01),
            (FieldKind::PadicOdd { .. }, Ramification::Ramified) => SquareClass(0b10),
            (FieldKind::Real, Ramification::Ramified) => SquareClass(0b1),
            (kind, r) => {
                return Err(Error::Validation(format!(
                    "no standard {r:?} quadratic extension for {kind:?}; give a discriminant"
                )))
            }
        };
        self.with_discriminant(ramification, disc)
    }

    pub fn with_discriminant(mut self, ramification: Ramification, disc: SquareClass) -> Result<LocalFieldModel> {
        if disc.is_identity() || !self.classes.contains(disc) {
            return Err(Error::Validation("discriminant must be a non-trivial square class".into()));
        }
        self.involution = Involution::Quadratic { ramification, disc };
        Ok(self)
    }

    /// The split algebra `k0 x k0`: every packet is a singleton.
    pub fn split(mut self) -> LocalFieldModel {
        self.involution = Involution::Split;
        self
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn classes(&self) -> &SquareClassGroup {
        &self.classes
    }

    pub fn involution(&self) -> Involution {
        self.involution
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self.kind, FieldKind::Real | FieldKind::Complex)
    }

    pub fn singleton_packets(&self) -> bool {
        self.involution == Involution::Split
    }

    /// The quadratic character of the extension, when there is one.
    pub fn omega(&self) -> Option<QuadraticCharacter> {
        match self.involution {
            Involution::Quadratic { disc, .. } => Some(self.classes.hilbert_character(disc)),
            _ => None,
        }
    }

    pub fn char_eval(&self, chi: QuadraticCharacter, x: SquareClass) -> Result<Sign> {
        if !self.classes.contains(x) {
            return Err(Error::Domain(format!("{:#b} is not a square class of this field", x.0)));
        }
        chi.eval(x)
    }
}

impl fmt::Display for LocalFieldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::PadicOdd { q_mod_4 } => write!(f, "p-adic (q = {q_mod_4} mod 4)")?,
            FieldKind::Real => f.write_str("real")?,
            FieldKind::Complex => f.write_str("complex")?,
            FieldKind::Custom => write!(f, "custom rank {}", self.classes.rank())?,
        }
        match self.involution {
            Involution::Trivial => Ok(()),
            Involution::Split => f.write_str(", split"),
            Involution::Quadratic { ramification, disc } => {
                write!(f, ", {:?} extension by {}", ramification, self.classes.format(disc))
            }
        }
    }
}
