use std::fmt;

use super::local::{chi_conj_value, chi_self_value};
use super::metaplectic::metaplectic_eta_bracket_value;
use super::CharacterOnA;
use crate::component_groups::{component_group, eigenspace, eta, ComponentElement};
use crate::field_model::{LocalFieldModel, PsiClass, SquareClass};
use crate::rep_algebra::{AtomSet, Duality, EpsilonTable, FormalRep, TwistKey};
use crate::{Error, Result, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub element: ComponentElement,
    pub expected: Sign,
    pub actual: Sign,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn record(&mut self, element: ComponentElement, expected: Sign, actual: Sign) {
        self.checked += 1;
        if expected != actual {
            self.mismatches.push(Mismatch { element, expected, actual });
        }
    }
}

fn require(rep: &FormalRep, d: Duality, what: &str) -> Result<()> {
    if rep.declared() != Some(d) {
        return Err(Error::Domain(format!("{what} = {} must be declared {d}", rep.render())));
    }
    Ok(())
}

/// Replaces `psi0` by `psi0` translated by `t` (with `omega(t) = -1`) in the hermitian
/// recipe and checks the result is `eta(a) chi(a, b)` at every `(a, b)`.
pub fn hermitian_psi_change_check(
    m: &FormalRep,
    n: &FormalRep,
    psi0: &PsiClass,
    t: SquareClass,
    table: &EpsilonTable,
    atoms: &AtomSet,
) -> Result<ConsistencyReport> {
    require(m, Duality::ConjSymplectic, "M")?;
    require(n, Duality::ConjOrthogonal, "N")?;
    let field = atoms.field();
    let omega = field.omega().ok_or_else(|| Error::Domain("no quadratic extension".into()))?;
    if field.char_eval(omega, t)? != Sign::Minus {
        return Err(Error::Domain("the translating class must have omega(t) = -1".into()));
    }
    let shifted = psi0.translate(t);
    let (gm, gn) = (component_group(m, atoms, false)?, component_group(n, atoms, false)?);
    let group = gm.product(&gn)?;
    let mut report = ConsistencyReport::default();
    for x in group.elements() {
        let (a, b) = group.split(x);
        let (ma, nb) = (eigenspace(m, &gm, a)?, eigenspace(n, &gn, b)?);
        let at = |psi: &PsiClass| -> Result<Sign> {
            Ok(chi_conj_value(&ma, n, psi, table, atoms)? * chi_conj_value(&nb, m, psi, table, atoms)?)
        };
        report.record(x, eta(&gm, a)? * at(psi0)?, at(&shifted)?);
    }
    Ok(report)
}

/// Compares the two evaluations of the distinguished character after the `c`-conjugation
/// of the metaplectic group, on `A_M x A_N+`:
/// `chi_{N(c)+C}(a') eta[c](a') chi_M(N(c)^a)` against `chi_{N+C}(M(c)^a') chi_{M(c)}(N^a)`.
pub fn metaplectic_psi_prop_check(
    m: &FormalRep,
    n: &FormalRep,
    c: SquareClass,
    unit: &str,
    table: &EpsilonTable,
    atoms: &AtomSet,
) -> Result<ConsistencyReport> {
    require(m, Duality::Symplectic, "M")?;
    require(n, Duality::Orthogonal, "N")?;
    if n.dim(atoms)? % 2 == 0 {
        return Err(Error::Domain("N must have odd dimension".into()));
    }
    let psi = table.base_psi();
    let key = TwistKey::Class(c);
    let mc = table.twist(m, &key, atoms)?;
    let nc = table.twist(n, &key, atoms)?;
    let n1 = n.clone().with(unit, 1);
    let nc1 = nc.clone().with(unit, 1);
    let (gm, gn) = (component_group(m, atoms, false)?, component_group(n, atoms, true)?);
    let group = gm.product(&gn)?;
    let mut report = ConsistencyReport::default();
    for x in group.elements() {
        let (ap, a) = group.split(x);
        let (ma, na) = (eigenspace(m, &gm, ap)?, eigenspace(n, &gn, a)?);
        let (mca, nca) = (table.twist(&ma, &key, atoms)?, table.twist(&na, &key, atoms)?);
        let lhs = chi_self_value(&ma, &nc1, psi, table, atoms)?
            * metaplectic_eta_bracket_value(&ma, c, table, atoms)?
            * chi_self_value(&nca, m, psi, table, atoms)?;
        let rhs = chi_self_value(&mca, &n1, psi, table, atoms)? * chi_self_value(&na, &mc, psi, table, atoms)?;
        report.record(x, rhs, lhs);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerForm {
    QuasiSplit,
    NonQuasiSplit,
}

impl fmt::Display for InnerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerForm::QuasiSplit => "quasi-split",
            InnerForm::NonQuasiSplit => "non-quasi-split",
        })
    }
}

/// The pure inner form a character lives on, read off from its value at the central `-1`.
pub fn pure_inner_form_of(chi: &CharacterOnA, field: &LocalFieldModel) -> Result<InnerForm> {
    if field.is_archimedean() {
        return Err(Error::Domain("pure inner forms are read off this way only over p-adic fields".into()));
    }
    let z = chi.group().central_element();
    if !chi.group().contains(z) {
        return Err(Error::Domain("the central element is not in the character's domain".into()));
    }
    Ok(match chi.eval(z)? {
        Sign::Plus => InnerForm::QuasiSplit,
        Sign::Minus => InnerForm::NonQuasiSplit,
    })
}
