//! Which classical group a formal parameter belongs to, and unramified parameters.

use std::fmt;

use num_rational::Rational64;

use crate::component_groups::{BasisElement, ComponentGroup};
use crate::field_model::{Involution, LocalFieldModel, PsiClass, QuadraticCharacter, Ramification, SquareClass};
use crate::rep_algebra::{real, Atom, AtomSet, Context, Duality, EpsilonTable, FormalRep, TwistKey};
use crate::{Error, Result, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Sp,
    SoOdd,
    SoEven,
    UOdd,
    UEven,
    Metaplectic,
    GL,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCase {
    pub kind: GroupKind,
    /// The `n` in `Sp(n)`, `SO(n)`, `U(n)`, `Mp(n)`, `GL(n)`.
    pub n: u64,
    /// `det M` for even orthogonal groups.
    pub disc: Option<QuadraticCharacter>,
    /// Two parameters share `M` (even orthogonal, no odd-dimensional orthogonal summand).
    pub ambiguous: bool,
}

impl GroupCase {
    fn plain(kind: GroupKind, n: u64) -> GroupCase {
        GroupCase { kind, n, disc: None, ambiguous: false }
    }

    pub fn name(&self) -> String {
        let g = match self.kind {
            GroupKind::Sp => "Sp",
            GroupKind::SoOdd | GroupKind::SoEven => "SO",
            GroupKind::UOdd | GroupKind::UEven => "U",
            GroupKind::Metaplectic => "Mp",
            GroupKind::GL => "GL",
        };
        format!("{g}({})", self.n)
    }
}

impl fmt::Display for GroupCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// True iff no orthogonal summand of `m` has odd dimension.
pub fn ambiguity_flag(m: &FormalRep, atoms: &AtomSet) -> Result<bool> {
    for (id, _) in m.summands() {
        let atom = atoms.get(id)?;
        if atom.duality() == Some(Duality::Orthogonal) && atom.dim % 2 == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The group `m` parameterizes. `metaplectic` selects `Mp` over `SO` for symplectic input;
/// `disc`, when given, must equal `det m` in the even orthogonal case.
pub fn classify(
    m: &FormalRep,
    field: &LocalFieldModel,
    atoms: &AtomSet,
    metaplectic: bool,
    disc: Option<SquareClass>,
) -> Result<GroupCase> {
    let declared = m
        .declared()
        .ok_or_else(|| Error::Classification(format!("{} has no declared duality", m.render())))?;
    m.check(atoms)?;
    let dim = m.dim(atoms)?;
    let fail = |why: &str| Err(Error::Classification(format!("{declared} of dimension {dim}: {why}")));
    if metaplectic && declared != Duality::Symplectic {
        return fail("the metaplectic group needs a symplectic parameter");
    }
    match (declared.context(), field.involution()) {
        (Context::Conjugate, Involution::Split) => return Ok(GroupCase::plain(GroupKind::GL, dim)),
        (Context::Conjugate, Involution::Trivial) => return fail("conjugate-dual without a quadratic extension"),
        (Context::Selfdual, Involution::Quadratic { .. }) => return fail("selfdual over a quadratic extension"),
        _ => {}
    }
    match declared {
        Duality::Orthogonal if dim % 2 == 1 => {
            if !m.det(atoms)?.is_trivial() {
                return fail("odd orthogonal parameters need trivial determinant");
            }
            Ok(GroupCase::plain(GroupKind::Sp, dim - 1))
        }
        Duality::Orthogonal => {
            let det = m.det(atoms)?;
            if let Some(d) = disc {
                if field.classes().hilbert_character(d) != det {
                    return fail("determinant differs from the given discriminant");
                }
            }
            Ok(GroupCase { kind: GroupKind::SoEven, n: dim, disc: Some(det), ambiguous: ambiguity_flag(m, atoms)? })
        }
        Duality::Symplectic if metaplectic => Ok(GroupCase::plain(GroupKind::Metaplectic, dim)),
        Duality::Symplectic => Ok(GroupCase::plain(GroupKind::SoOdd, dim + 1)),
        Duality::ConjOrthogonal if dim % 2 == 1 => Ok(GroupCase::plain(GroupKind::UOdd, dim)),
        Duality::ConjSymplectic if dim % 2 == 0 => Ok(GroupCase::plain(GroupKind::UEven, dim)),
        _ => fail("unitary parameters are conjugate-orthogonal in odd and conjugate-symplectic in even dimension"),
    }
}

/// The image of the central `-1` under the character of the generic member:
/// `eps(M)` for `Sp` and odd `SO`, `eps(M) / eps(det M)` for even `SO`.
pub fn central_sign(m: &FormalRep, case: &GroupCase, t: &EpsilonTable, atoms: &AtomSet) -> Result<Sign> {
    let psi = t.base_psi();
    let eps = |rep: &FormalRep| real(t.epsilon_single(rep, psi, atoms)?, || rep.render());
    match case.kind {
        GroupKind::Sp | GroupKind::SoOdd => eps(m),
        GroupKind::SoEven => {
            let det = m.det(atoms)?;
            if det.is_trivial() {
                return eps(m);
            }
            let line = atoms
                .iter()
                .find(|a| a.dim == 1 && a.duality() == Some(Duality::Orthogonal) && a.det == Some(det))
                .ok_or_else(|| Error::IncompleteTable(format!("no 1-dimensional atom with the determinant of {}", m.render())))?;
            let d = FormalRep::of(Duality::Orthogonal, &[(line.id.as_str(), 1)]);
            Ok(eps(m)? * eps(&d)?)
        }
        _ => Err(Error::Domain(format!("no central sign rule for {case}"))),
    }
}

/// `sum_i (C(s_i) + C(1/s_i)) + m C(-1) + n C(1)` with Frobenius eigenvalues `s_i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnramifiedRep {
    pub pairs: Vec<Rational64>,
    pub m: u64,
    pub n: u64,
}

pub struct UnramifiedFixture {
    pub atoms: AtomSet,
    pub table: EpsilonTable,
    /// The representation with no declared duality.
    pub rep: FormalRep,
}

fn frob_id(s: Rational64) -> String {
    format!("C({s})")
}

fn unramified_context(field: &LocalFieldModel) -> Result<Context> {
    match field.involution() {
        Involution::Trivial => Ok(Context::Selfdual),
        Involution::Quadratic { ramification: Ramification::Inert, .. } => Ok(Context::Conjugate),
        _ => Err(Error::Domain("unramified fixtures need a p-adic field or its unramified extension".into())),
    }
}

/// Atoms `C(s)` for every eigenvalue in play (with `-s` for the unramified quadratic twist), the
/// all-`+1` root numbers of an unramified parameter, and the representation itself.
pub fn unramified_build(u: &UnramifiedRep, field: &LocalFieldModel) -> Result<UnramifiedFixture> {
    if !matches!(field.kind(), crate::field_model::FieldKind::PadicOdd { .. }) {
        return Err(Error::Domain("unramified fixtures live over p-adic fields".into()));
    }
    let context = unramified_context(field)?;
    let one = Rational64::from_integer(1);
    for &s in &u.pairs {
        if s == one || s == -one || s == Rational64::from_integer(0) {
            return Err(Error::Validation(format!("Frobenius eigenvalue {s} must differ from its inverse")));
        }
    }
    let classes = field.classes();
    let unram = classes.hilbert_character(classes.parse("u")?);
    let trivial = QuadraticCharacter::trivial(classes.rank());
    let psi = PsiClass::new("psi");
    let (plus, minus) = match context {
        Context::Selfdual => (Duality::Orthogonal, Duality::Orthogonal),
        Context::Conjugate => (Duality::ConjOrthogonal, Duality::ConjSymplectic),
    };
    let mut atoms = AtomSet::empty(field.clone());
    atoms.insert(Atom::dual(frob_id(one), 1, plus, trivial).with_eps(psi.clone(), Sign::Plus))?;
    atoms.insert(Atom::dual(frob_id(-one), 1, minus, unram).with_eps(psi.clone(), Sign::Plus))?;
    let mut twist_pairs = vec![(one, -one)];
    for &s in &u.pairs {
        for x in [s, -s] {
            for (a, b) in [(x, x.recip()), (x.recip(), x)] {
                if !atoms.contains(&frob_id(a)) {
                    let atom = Atom::non_dual(frob_id(a), 1, context, frob_id(b)).with_det_at_minus_one(Sign::Plus);
                    atoms.insert(atom)?;
                }
            }
        }
        twist_pairs.push((s, -s));
        twist_pairs.push((s.recip(), -s.recip()));
    }
    atoms.check_complete()?;

    let mut table = EpsilonTable::new(context, psi.clone());
    let ids: Vec<String> = atoms.iter().map(|a| a.id.clone()).collect();
    for (i, a) in ids.iter().enumerate() {
        for b in &ids[i..] {
            table.set_pair(a, b, &psi, Sign::Plus);
        }
    }
    // Twisting by the unramified character with value -1 at a uniformizer.
    let by = match context {
        Context::Selfdual => TwistKey::Class(classes.parse("u")?),
        Context::Conjugate => TwistKey::Character(frob_id(-one)),
    };
    for (a, b) in twist_pairs {
        table.set_twist(&frob_id(a), by.clone(), &frob_id(b));
        table.set_twist(&frob_id(b), by.clone(), &frob_id(a));
    }

    let mut rep = FormalRep::new(None);
    for &s in &u.pairs {
        rep.add(&frob_id(s), 1);
        rep.add(&frob_id(s.recip()), 1);
    }
    rep.add(&frob_id(-one), u.m);
    rep.add(&frob_id(one), u.n);
    Ok(UnramifiedFixture { atoms, table, rep })
}

/// The dualities an unramified parameter admits, each with its component group
/// (`A+` in the orthogonal case), in closed form.
pub fn unramified_classify(u: &UnramifiedRep, field: &LocalFieldModel) -> Result<Vec<(Duality, ComponentGroup)>> {
    let context = unramified_context(field)?;
    unramified_build(u, field)?;
    let z2 = |id: String, mult: u64| ComponentGroup::from_basis(vec![BasisElement { atom: id, dim: 1, multiplicity: mult }], vec![]);
    let (minus, plus) = (frob_id(Rational64::from_integer(-1)), frob_id(Rational64::from_integer(1)));
    let mut out = Vec::new();
    match context {
        Context::Selfdual => {
            // A+ of the orthogonal parameter: trivial unless both lines occur.
            let mut basis = Vec::new();
            for (id, mult) in [(minus, u.m), (plus, u.n)] {
                if mult > 0 {
                    basis.push(BasisElement { atom: id, dim: 1, multiplicity: mult });
                }
            }
            let g = ComponentGroup::from_basis(basis, vec![])?;
            let f = g.parity_functional();
            let a = ComponentGroup::from_basis(g.basis().to_vec(), vec![f])?;
            out.push((Duality::Orthogonal, a));
            if u.m.is_multiple_of(2) && u.n.is_multiple_of(2) {
                out.push((Duality::Symplectic, ComponentGroup::trivial()));
            }
        }
        Context::Conjugate => {
            if u.m.is_multiple_of(2) {
                let a = if u.n > 0 { z2(plus, u.n)? } else { ComponentGroup::trivial() };
                out.push((Duality::ConjOrthogonal, a));
            }
            if u.n.is_multiple_of(2) {
                let a = if u.m > 0 { z2(minus, u.m)? } else { ComponentGroup::trivial() };
                out.push((Duality::ConjSymplectic, a));
            }
        }
    }
    Ok(out)
}
