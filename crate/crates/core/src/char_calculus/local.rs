use super::{CharacterOnA, ComponentCharacter, PointwiseCharacter};
use crate::component_groups::{component_group, eigenspace, eta, eta_c, ComponentGroup};
use crate::field_model::{PsiClass, SquareClass};
use crate::rep_algebra::{real, AtomSet, Context, EpsilonTable, FormalRep};
use crate::{Error, Result, Sign};

fn require_context(rep: &FormalRep, ctx: Context, what: &str) -> Result<()> {
    match rep.declared() {
        Some(d) if d.context() == ctx => Ok(()),
        Some(d) => Err(Error::Domain(format!("{what} is {d}, expected a {ctx} representation"))),
        None => Err(Error::Domain(format!("{what} has no declared duality"))),
    }
}

/// `eps(M^a (x) N, psi0)` for a given eigenspace `M^a`.
pub fn chi_conj_value(ma: &FormalRep, n: &FormalRep, psi0: &PsiClass, t: &EpsilonTable, atoms: &AtomSet) -> Result<Sign> {
    let v = t.epsilon(ma, n, psi0, atoms)?;
    real(v, || format!("{} (x) {}", ma.render(), n.render()))
}

/// `eps(M^a (x) N, psi) det(M^a)(-1)^(dim N / 2) det(N)(-1)^(dim M^a / 2)`.
pub fn chi_self_value(ma: &FormalRep, n: &FormalRep, psi: &PsiClass, t: &EpsilonTable, atoms: &AtomSet) -> Result<Sign> {
    let (dm, dn) = (ma.dim(atoms)?, n.dim(atoms)?);
    if dm % 2 == 1 {
        return Err(Error::Domain(format!("{} has odd dimension {dm}; the element is not in A+", ma.render())));
    }
    if dn % 2 == 1 {
        return Err(Error::Domain(format!("{} has odd dimension {dn}", n.render())));
    }
    let v = t.epsilon(ma, n, psi, atoms)?;
    let e = real(v, || format!("{} (x) {}", ma.render(), n.render()))?;
    Ok(e * ma.det_at_minus_one(atoms)?.pow(dn / 2) * n.det_at_minus_one(atoms)?.pow(dm / 2))
}

/// `chi_N(a) = eps(M^a (x) N, psi0)` on `A_M`, for conjugate-dual `M` and `N`.
pub fn chi_conj(m: &FormalRep, n: &FormalRep, psi0: &PsiClass, t: &EpsilonTable, atoms: &AtomSet) -> Result<CharacterOnA> {
    chi_conj_pointwise(m, n, psi0, t, atoms)?.to_character()
}

pub fn chi_conj_pointwise<'a>(
    m: &'a FormalRep,
    n: &'a FormalRep,
    psi0: &'a PsiClass,
    t: &'a EpsilonTable,
    atoms: &'a AtomSet,
) -> Result<PointwiseCharacter<'a>> {
    require_context(m, Context::Conjugate, "M")?;
    if !n.is_empty() {
        require_context(n, Context::Conjugate, "N")?;
    }
    let group = component_group(m, atoms, false)?;
    let g = group.clone();
    Ok(PointwiseCharacter::new(group, move |a| chi_conj_value(&eigenspace(m, &g, a)?, n, psi0, t, atoms)))
}

/// `chi_N` on `A_M+` for selfdual `M`, `N` of even dimension, at the table's base character.
pub fn chi_self(m: &FormalRep, n: &FormalRep, t: &EpsilonTable, atoms: &AtomSet) -> Result<CharacterOnA> {
    chi_self_at(m, n, t.base_psi(), t, atoms)
}

/// [`chi_self`] computed with a chosen additive character; the result does not depend on it.
pub fn chi_self_at(m: &FormalRep, n: &FormalRep, psi: &PsiClass, t: &EpsilonTable, atoms: &AtomSet) -> Result<CharacterOnA> {
    chi_self_pointwise(m, n, psi, t, atoms)?.to_character()
}

pub fn chi_self_pointwise<'a>(
    m: &'a FormalRep,
    n: &'a FormalRep,
    psi: &'a PsiClass,
    t: &'a EpsilonTable,
    atoms: &'a AtomSet,
) -> Result<PointwiseCharacter<'a>> {
    require_context(m, Context::Selfdual, "M")?;
    if !n.is_empty() {
        require_context(n, Context::Selfdual, "N")?;
    }
    for (what, rep) in [("M", m), ("N", n)] {
        let d = rep.dim(atoms)?;
        if d % 2 == 1 {
            return Err(Error::Domain(format!("{what} = {} has odd dimension {d}", rep.render())));
        }
    }
    let group = component_group(m, atoms, true)?;
    let g = group.clone();
    Ok(PointwiseCharacter::new(group, move |a| chi_self_value(&eigenspace(m, &g, a)?, n, psi, t, atoms)))
}

/// `eta(a) = (-1)^dim M^a` on `A_M`.
pub fn eta_character(group: &ComponentGroup) -> Result<CharacterOnA> {
    eta_pointwise(group).to_character()
}

pub fn eta_pointwise(group: &ComponentGroup) -> PointwiseCharacter<'static> {
    let g = group.clone();
    PointwiseCharacter::new(group.clone(), move |a| eta(&g, a))
}

/// `eta_c(a) = det(M^a)(c)` on `A_M`.
pub fn eta_c_character(m: &FormalRep, group: &ComponentGroup, c: SquareClass, atoms: &AtomSet) -> Result<CharacterOnA> {
    eta_c_pointwise(m, group, c, atoms).to_character()
}

pub fn eta_c_pointwise<'a>(m: &'a FormalRep, group: &ComponentGroup, c: SquareClass, atoms: &'a AtomSet) -> PointwiseCharacter<'a> {
    let g = group.clone();
    PointwiseCharacter::new(group.clone(), move |a| eta_c(m, &g, c, a, atoms))
}
