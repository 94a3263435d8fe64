use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::field_model::{Involution, LocalFieldModel, PsiClass, QuadraticCharacter, Restriction};
use crate::{Error, FourthRoot, Result, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Context {
    Selfdual,
    Conjugate,
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Context::Selfdual => "selfdual",
            Context::Conjugate => "conjugate-dual",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Duality {
    Orthogonal,
    Symplectic,
    ConjOrthogonal,
    ConjSymplectic,
}

impl Duality {
    pub fn sign(self) -> Sign {
        match self {
            Duality::Orthogonal | Duality::ConjOrthogonal => Sign::Plus,
            Duality::Symplectic | Duality::ConjSymplectic => Sign::Minus,
        }
    }

    pub fn context(self) -> Context {
        match self {
            Duality::Orthogonal | Duality::Symplectic => Context::Selfdual,
            Duality::ConjOrthogonal | Duality::ConjSymplectic => Context::Conjugate,
        }
    }

    pub fn from_parts(context: Context, sign: Sign) -> Duality {
        match (context, sign) {
            (Context::Selfdual, Sign::Plus) => Duality::Orthogonal,
            (Context::Selfdual, Sign::Minus) => Duality::Symplectic,
            (Context::Conjugate, Sign::Plus) => Duality::ConjOrthogonal,
            (Context::Conjugate, Sign::Minus) => Duality::ConjSymplectic,
        }
    }

    pub fn times(self, sign: Sign) -> Duality {
        Duality::from_parts(self.context(), self.sign() * sign)
    }

    pub fn name(self) -> &'static str {
        match self {
            Duality::Orthogonal => "orthogonal",
            Duality::Symplectic => "symplectic",
            Duality::ConjOrthogonal => "conjugate-orthogonal",
            Duality::ConjSymplectic => "conjugate-symplectic",
        }
    }
}

impl fmt::Display for Duality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Duality {
    type Err = Error;
    fn from_str(s: &str) -> Result<Duality> {
        match s {
            "orthogonal" => Ok(Duality::Orthogonal),
            "symplectic" => Ok(Duality::Symplectic),
            "conjugate-orthogonal" => Ok(Duality::ConjOrthogonal),
            "conjugate-symplectic" => Ok(Duality::ConjSymplectic),
            other => Err(Error::Parse(format!("unknown duality {other:?}"))),
        }
    }
}

/// Duality type of a 1-dimensional conjugate-dual character, read off its restriction to the base.
pub fn one_dim_conj_type(chi: QuadraticCharacter) -> Duality {
    match chi.restriction() {
        Restriction::TrivialOnBase => Duality::ConjOrthogonal,
        Restriction::NontrivialOnBase => Duality::ConjSymplectic,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomKind {
    Dual(Duality),
    /// Not (conjugate-)selfdual; `partner` is `P^v` (selfdual context) or `(P^s)^v`.
    NonDual { context: Context, partner: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub id: String,
    pub dim: u64,
    pub kind: AtomKind,
    /// Determinant; in conjugate contexts, its restriction to the base field.
    pub det: Option<QuadraticCharacter>,
    /// `det(-1)` for non-dual atoms whose determinant is not quadratic.
    pub det_at_minus_one: Option<Sign>,
    pub eps_self: BTreeMap<PsiClass, FourthRoot>,
}

impl Atom {
    pub fn dual(id: impl Into<String>, dim: u64, duality: Duality, det: QuadraticCharacter) -> Atom {
        Atom {
            id: id.into(),
            dim,
            kind: AtomKind::Dual(duality),
            det: Some(det),
            det_at_minus_one: None,
            eps_self: BTreeMap::new(),
        }
    }

    pub fn non_dual(id: impl Into<String>, dim: u64, context: Context, partner: impl Into<String>) -> Atom {
        Atom {
            id: id.into(),
            dim,
            kind: AtomKind::NonDual { context, partner: partner.into() },
            det: None,
            det_at_minus_one: None,
            eps_self: BTreeMap::new(),
        }
    }

    pub fn with_det(mut self, det: QuadraticCharacter) -> Atom {
        self.det = Some(det);
        self
    }

    pub fn with_det_at_minus_one(mut self, s: Sign) -> Atom {
        self.det_at_minus_one = Some(s);
        self
    }

    pub fn with_eps(mut self, psi: PsiClass, value: impl Into<FourthRoot>) -> Atom {
        self.eps_self.insert(psi, value.into());
        self
    }

    pub fn context(&self) -> Context {
        match &self.kind {
            AtomKind::Dual(d) => d.context(),
            AtomKind::NonDual { context, .. } => *context,
        }
    }

    pub fn duality(&self) -> Option<Duality> {
        match &self.kind {
            AtomKind::Dual(d) => Some(*d),
            AtomKind::NonDual { .. } => None,
        }
    }

    pub fn partner(&self) -> Option<&str> {
        match &self.kind {
            AtomKind::Dual(_) => None,
            AtomKind::NonDual { partner, .. } => Some(partner),
        }
    }
}

/// The atoms available over one local field, in declaration order.
#[derive(Clone, Debug)]
pub struct AtomSet {
    field: LocalFieldModel,
    atoms: Vec<Atom>,
    index: HashMap<String, usize>,
}

impl AtomSet {
    pub fn empty(field: LocalFieldModel) -> AtomSet {
        AtomSet { field, atoms: Vec::new(), index: HashMap::new() }
    }

    pub fn new(field: LocalFieldModel, atoms: Vec<Atom>) -> Result<AtomSet> {
        let mut set = AtomSet::empty(field);
        for atom in atoms {
            set.insert(atom)?;
        }
        set.check_complete()?;
        Ok(set)
    }

    pub fn field(&self) -> &LocalFieldModel {
        &self.field
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.iter()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn get(&self, id: &str) -> Result<&Atom> {
        self.index
            .get(id)
            .map(|&i| &self.atoms[i])
            .ok_or_else(|| Error::UnknownId(format!("atom {id:?}")))
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Adds one atom after checking its own invariants and, when its partner is
    /// already present, the pairing between them.
    pub fn insert(&mut self, atom: Atom) -> Result<()> {
        if self.index.contains_key(&atom.id) {
            return Err(Error::Validation(format!("atom {:?} declared twice", atom.id)));
        }
        self.check_atom(&atom)?;
        if let Some(p) = atom.partner() {
            if let Ok(partner) = self.get(p) {
                check_partners(&atom, partner)?;
            }
        }
        self.index.insert(atom.id.clone(), self.atoms.len());
        self.atoms.push(atom);
        Ok(())
    }

    /// Every non-dual atom has its partner declared.
    pub fn check_complete(&self) -> Result<()> {
        for atom in &self.atoms {
            if let Some(p) = atom.partner() {
                check_partners(atom, self.get(p)?)?;
            }
        }
        Ok(())
    }

    fn check_atom(&self, atom: &Atom) -> Result<()> {
        let bad = |msg: String| Err(Error::Validation(format!("atom {:?}: {msg}", atom.id)));
        if atom.id.is_empty() {
            return Err(Error::Validation("empty atom id".into()));
        }
        if atom.dim == 0 {
            return bad("dimension must be positive".into());
        }
        let rank = self.field.classes().rank();
        if let Some(det) = atom.det {
            if det.rank() != rank {
                return bad(format!("determinant lives on a rank-{} group, field has rank {rank}", det.rank()));
            }
        }
        if let (Some(det), Some(s)) = (atom.det, atom.det_at_minus_one) {
            if det.value(self.field.classes().minus_one()) != s {
                return bad("det(-1) disagrees with the determinant character".into());
            }
        }
        let involution = self.field.involution();
        match (atom.context(), involution) {
            (Context::Selfdual, Involution::Quadratic { .. }) => {
                return bad("selfdual atom over a field with a quadratic involution".into())
            }
            (Context::Conjugate, Involution::Trivial) => {
                return bad("conjugate-dual atom needs a quadratic extension or split algebra".into())
            }
            _ => {}
        }
        for psi in atom.eps_self.keys() {
            if !self.field.classes().contains(psi.shift) {
                return bad("additive character shift outside the square-class group".into());
            }
        }
        let Some(duality) = atom.duality() else {
            if atom.partner() == Some(atom.id.as_str()) {
                return bad("a non-dual atom cannot be its own partner".into());
            }
            return Ok(());
        };
        let Some(det) = atom.det else {
            return bad("dual atoms need a determinant".into());
        };
        match duality {
            Duality::Symplectic => {
                if atom.dim % 2 == 1 {
                    return bad("symplectic atoms have even dimension".into());
                }
                if !det.is_trivial() {
                    return bad("symplectic atoms have trivial determinant".into());
                }
            }
            Duality::Orthogonal => {}
            Duality::ConjOrthogonal | Duality::ConjSymplectic => {
                if let Some(omega) = self.field.omega() {
                    if det != QuadraticCharacter::trivial(rank) && det != omega {
                        return bad("conjugate-dual determinant must restrict to 1 or the extension character".into());
                    }
                    // det of a conjugate-dual piece of sign b is conjugate-dual of sign b^dim.
                    let expected = if duality.sign().pow(atom.dim).is_minus() {
                        Restriction::NontrivialOnBase
                    } else {
                        Restriction::TrivialOnBase
                    };
                    if det.restriction() != expected {
                        return bad(format!(
                            "a {duality} atom of dimension {} must have determinant {}",
                            atom.dim,
                            if expected == Restriction::TrivialOnBase { "trivial on the base" } else { "restricting to the extension character" }
                        ));
                    }
                    if atom.dim == 1 && one_dim_conj_type(det) != duality {
                        return bad("1-dimensional type contradicts its restriction to the base".into());
                    }
                }
            }
        }
        Ok(())
    }

    pub fn det(&self, id: &str) -> Result<QuadraticCharacter> {
        let atom = self.get(id)?;
        atom.det
            .ok_or_else(|| Error::IncompleteTable(format!("atom {id:?} has no quadratic determinant")))
    }

    pub fn det_at_minus_one(&self, id: &str) -> Result<Sign> {
        let atom = self.get(id)?;
        if let Some(det) = atom.det {
            return Ok(det.value(self.field.classes().minus_one()));
        }
        atom.det_at_minus_one
            .ok_or_else(|| Error::IncompleteTable(format!("atom {id:?} has no value for det(-1)")))
    }

    /// `det(X (x) Y) = det(X)^dim Y * det(Y)^dim X`.
    pub fn tensor_det(&self, x: &str, y: &str) -> Result<QuadraticCharacter> {
        let (a, b) = (self.get(x)?, self.get(y)?);
        Ok(self.det(x)?.pow(b.dim) * self.det(y)?.pow(a.dim))
    }

    pub fn tensor_det_at_minus_one(&self, x: &str, y: &str) -> Result<Sign> {
        let (a, b) = (self.get(x)?, self.get(y)?);
        Ok(self.det_at_minus_one(x)?.pow(b.dim) * self.det_at_minus_one(y)?.pow(a.dim))
    }
}

fn check_partners(a: &Atom, b: &Atom) -> Result<()> {
    let fail = |msg: &str| Err(Error::Validation(format!("atoms {:?} and {:?}: {msg}", a.id, b.id)));
    if b.partner() != Some(a.id.as_str()) {
        return fail("partners must name each other");
    }
    if a.dim != b.dim {
        return fail("partners must have equal dimension");
    }
    if a.context() != b.context() {
        return fail("partners must share a context");
    }
    if let (Ok(x), Ok(y)) = (det_m1(a), det_m1(b)) {
        if x != y {
            return fail("partners must agree at -1");
        }
    }
    Ok(())
}

fn det_m1(a: &Atom) -> Result<Sign> {
    a.det_at_minus_one.ok_or(Error::Domain(String::new()))
}
