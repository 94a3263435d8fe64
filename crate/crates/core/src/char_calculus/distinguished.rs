use std::fmt;
use std::str::FromStr;

use super::local::{chi_conj_value, chi_self_value};
use super::{CharacterOnA, ComponentCharacter, PointwiseCharacter};
use crate::classifier::{classify, GroupKind};
use crate::component_groups::{component_group, eigenspace};
use crate::field_model::PsiClass;
use crate::rep_algebra::{AtomSet, Duality, EpsilonTable, FormalRep, TwistKey};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    OrthogonalBessel,
    HermitianBessel,
    SymplecticMetaplectic,
    SkewHermitianOdd,
    SkewHermitianEven,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::OrthogonalBessel => "orthogonal-bessel",
            Case::HermitianBessel => "hermitian-bessel",
            Case::SymplecticMetaplectic => "symplectic-metaplectic",
            Case::SkewHermitianOdd => "skew-hermitian-odd",
            Case::SkewHermitianEven => "skew-hermitian-even",
        }
    }

    pub fn is_skew(self) -> bool {
        matches!(self, Case::SkewHermitianOdd | Case::SkewHermitianEven)
    }

    fn needs_psi0(self) -> bool {
        matches!(self, Case::HermitianBessel | Case::SkewHermitianOdd)
    }

    /// The groups `M` and `N` must parameterize.
    fn expected(self) -> (GroupKind, GroupKind) {
        match self {
            Case::OrthogonalBessel => (GroupKind::SoOdd, GroupKind::SoEven),
            Case::HermitianBessel => (GroupKind::UEven, GroupKind::UOdd),
            Case::SymplecticMetaplectic => (GroupKind::Metaplectic, GroupKind::Sp),
            Case::SkewHermitianOdd => (GroupKind::UOdd, GroupKind::UOdd),
            Case::SkewHermitianEven => (GroupKind::UEven, GroupKind::UEven),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Case> {
        [
            Case::OrthogonalBessel,
            Case::HermitianBessel,
            Case::SymplecticMetaplectic,
            Case::SkewHermitianOdd,
            Case::SkewHermitianEven,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown case {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseDescriptor {
    pub case: Case,
    pub psi: PsiClass,
    pub psi0: Option<PsiClass>,
    /// The 1-dimensional conjugate-symplectic atom the skew-hermitian recipe twists by.
    pub mu: Option<String>,
    /// The trivial 1-dimensional orthogonal atom `C` in `N + C` (metaplectic case).
    pub unit: Option<String>,
}

impl CaseDescriptor {
    pub fn new(case: Case, psi: PsiClass) -> CaseDescriptor {
        CaseDescriptor { case, psi, psi0: None, mu: None, unit: None }
    }

    pub fn check(&self) -> Result<()> {
        if self.mu.is_some() != self.case.is_skew() {
            return Err(Error::Validation(format!("{}: mu is required exactly in the skew-hermitian cases", self.case)));
        }
        if self.psi0.is_some() != self.case.needs_psi0() {
            return Err(Error::Validation(format!(
                "{}: psi0 is required exactly in the hermitian and odd skew-hermitian cases",
                self.case
            )));
        }
        Ok(())
    }

    /// The additive character used for conjugate-dual root numbers.
    fn conj_psi(&self) -> &PsiClass {
        self.psi0.as_ref().unwrap_or(&self.psi)
    }
}

fn check_shapes(desc: &CaseDescriptor, m: &FormalRep, n: &FormalRep, atoms: &AtomSet) -> Result<()> {
    let (em, en) = desc.case.expected();
    let metaplectic = desc.case == Case::SymplecticMetaplectic;
    let gm = classify(m, atoms.field(), atoms, metaplectic, None)?;
    let gn = classify(n, atoms.field(), atoms, false, None)?;
    if gm.kind != em || gn.kind != en {
        return Err(Error::Classification(format!(
            "{} needs M, N parameterizing {em:?} and {en:?}; got {} and {}",
            desc.case, gm, gn
        )));
    }
    Ok(())
}

fn unit_atom<'a>(desc: &'a CaseDescriptor, atoms: &'a AtomSet) -> Result<&'a str> {
    if let Some(u) = &desc.unit {
        let a = atoms.get(u)?;
        if a.dim != 1 || a.duality() != Some(Duality::Orthogonal) || !a.det.is_some_and(|d| d.is_trivial()) {
            return Err(Error::Validation(format!("{u:?} is not the trivial 1-dimensional orthogonal character")));
        }
        return Ok(u);
    }
    atoms
        .iter()
        .find(|a| a.dim == 1 && a.duality() == Some(Duality::Orthogonal) && a.det.is_some_and(|d| d.is_trivial()))
        .map(|a| a.id.as_str())
        .ok_or_else(|| Error::IncompleteTable("no trivial 1-dimensional orthogonal atom to form N + C".into()))
}

/// The distinguished character as a pointwise function on its domain.
///
/// Skew-hermitian cases use the ordering that twists `N`.
pub fn distinguished_pointwise<'a>(
    desc: &'a CaseDescriptor,
    m: &'a FormalRep,
    n: &'a FormalRep,
    t: &'a EpsilonTable,
    atoms: &'a AtomSet,
) -> Result<PointwiseCharacter<'a>> {
    desc.check()?;
    check_shapes(desc, m, n, atoms)?;
    match desc.case {
        Case::OrthogonalBessel => {
            let (gm, gn) = (component_group(m, atoms, true)?, component_group(n, atoms, true)?);
            let group = gm.product(&gn)?;
            let g = group.clone();
            Ok(PointwiseCharacter::new(group, move |x| {
                let (a, b) = g.split(x);
                Ok(chi_self_value(&eigenspace(m, &gm, a)?, n, &desc.psi, t, atoms)?
                    * chi_self_value(&eigenspace(n, &gn, b)?, m, &desc.psi, t, atoms)?)
            }))
        }
        Case::HermitianBessel => {
            let (gm, gn) = (component_group(m, atoms, false)?, component_group(n, atoms, false)?);
            let group = gm.product(&gn)?;
            let g = group.clone();
            let psi0 = desc.conj_psi();
            Ok(PointwiseCharacter::new(group, move |x| {
                let (a, b) = g.split(x);
                Ok(chi_conj_value(&eigenspace(m, &gm, a)?, n, psi0, t, atoms)?
                    * chi_conj_value(&eigenspace(n, &gn, b)?, m, psi0, t, atoms)?)
            }))
        }
        Case::SymplecticMetaplectic => {
            let unit = unit_atom(desc, atoms)?;
            let n1 = n.clone().with(unit, 1);
            let (gm, gn) = (component_group(m, atoms, false)?, component_group(n, atoms, true)?);
            let group = gm.product(&gn)?;
            let g = group.clone();
            Ok(PointwiseCharacter::new(group, move |x| {
                let (a, b) = g.split(x);
                Ok(chi_self_value(&eigenspace(m, &gm, a)?, &n1, &desc.psi, t, atoms)?
                    * chi_self_value(&eigenspace(n, &gn, b)?, m, &desc.psi, t, atoms)?)
            }))
        }
        Case::SkewHermitianOdd | Case::SkewHermitianEven => skew_pointwise(desc, m, n, t, atoms, true),
    }
}

fn skew_pointwise<'a>(
    desc: &'a CaseDescriptor,
    m: &'a FormalRep,
    n: &'a FormalRep,
    t: &'a EpsilonTable,
    atoms: &'a AtomSet,
    twist_n: bool,
) -> Result<PointwiseCharacter<'a>> {
    let key = TwistKey::Character(desc.mu.clone().expect("checked"));
    let (gm, gn) = (component_group(m, atoms, false)?, component_group(n, atoms, false)?);
    let group = gm.product(&gn)?;
    let g = group.clone();
    let psi0 = desc.conj_psi();
    if twist_n {
        let nt = t.twist(n, &key, atoms)?;
        Ok(PointwiseCharacter::new(group, move |x| {
            let (a, b) = g.split(x);
            let nb = t.twist(&eigenspace(n, &gn, b)?, &key, atoms)?;
            Ok(chi_conj_value(&eigenspace(m, &gm, a)?, &nt, psi0, t, atoms)? * chi_conj_value(&nb, m, psi0, t, atoms)?)
        }))
    } else {
        let mt = t.twist(m, &key, atoms)?;
        Ok(PointwiseCharacter::new(group, move |x| {
            let (a, b) = g.split(x);
            let ma = t.twist(&eigenspace(m, &gm, a)?, &key, atoms)?;
            Ok(chi_conj_value(&ma, n, psi0, t, atoms)? * chi_conj_value(&eigenspace(n, &gn, b)?, &mt, psi0, t, atoms)?)
        }))
    }
}

/// Both skew-hermitian orderings: twisting `N`, then twisting `M`.
pub fn skew_hermitian_orderings(
    desc: &CaseDescriptor,
    m: &FormalRep,
    n: &FormalRep,
    t: &EpsilonTable,
    atoms: &AtomSet,
) -> Result<(CharacterOnA, CharacterOnA)> {
    desc.check()?;
    if !desc.case.is_skew() {
        return Err(Error::Domain(format!("{} has a single ordering", desc.case)));
    }
    check_shapes(desc, m, n, atoms)?;
    let first = skew_pointwise(desc, m, n, t, atoms, true)?.to_character()?;
    let second = skew_pointwise(desc, m, n, t, atoms, false)?.to_character()?;
    Ok((first, second))
}

/// The character of `A_M x A_N` (or its `+` subgroups) singled out by the case recipe.
pub fn distinguished(desc: &CaseDescriptor, m: &FormalRep, n: &FormalRep, t: &EpsilonTable, atoms: &AtomSet) -> Result<CharacterOnA> {
    if desc.case.is_skew() {
        let (first, second) = skew_hermitian_orderings(desc, m, n, t, atoms)?;
        if first != second {
            return Err(Error::Validation(format!(
                "skew-hermitian orderings disagree: {} vs {}",
                first.render(),
                second.render()
            )));
        }
        return Ok(first);
    }
    distinguished_pointwise(desc, m, n, t, atoms)?.to_character()
}
