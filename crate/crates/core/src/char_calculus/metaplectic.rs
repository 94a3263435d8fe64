use super::{CharacterOnA, ComponentCharacter, PointwiseCharacter};
use crate::component_groups::{component_group, eigenspace};
use crate::field_model::SquareClass;
use crate::rep_algebra::{real, AtomSet, Duality, EpsilonTable, FormalRep, TwistKey};
use crate::{Error, FourthRoot, Result, Sign};

/// `eps(M^a) eps(M(c)^a) (c, -1)^(dim M^a / 2)` for a given eigenspace of a symplectic `M`.
pub fn metaplectic_eta_bracket_value(ma: &FormalRep, c: SquareClass, t: &EpsilonTable, atoms: &AtomSet) -> Result<Sign> {
    let d = ma.dim(atoms)?;
    if d % 2 == 1 {
        return Err(Error::Domain(format!("{} has odd dimension {d}", ma.render())));
    }
    let psi = t.base_psi();
    let mac = t.twist(ma, &TwistKey::Class(c), atoms)?;
    let v: FourthRoot = t.epsilon_single(ma, psi, atoms)? * t.epsilon_single(&mac, psi, atoms)?;
    let classes = atoms.field().classes();
    let e = real(v, || format!("{} and its twist", ma.render()))?;
    Ok(e * classes.pairing(c, classes.minus_one()).pow(d / 2))
}

pub fn metaplectic_eta_bracket_pointwise<'a>(
    m: &'a FormalRep,
    c: SquareClass,
    t: &'a EpsilonTable,
    atoms: &'a AtomSet,
) -> Result<PointwiseCharacter<'a>> {
    if m.declared() != Some(Duality::Symplectic) {
        return Err(Error::Domain(format!("{} is not declared symplectic", m.render())));
    }
    if !atoms.field().classes().contains(c) {
        return Err(Error::Domain("square class outside the field's group".into()));
    }
    let group = component_group(m, atoms, false)?;
    let g = group.clone();
    Ok(PointwiseCharacter::new(group, move |a| {
        metaplectic_eta_bracket_value(&eigenspace(m, &g, a)?, c, t, atoms)
    }))
}

/// The character `eta[c]` of `A_M`, identified with `A_M(c)` through the twist.
pub fn metaplectic_eta_bracket(m: &FormalRep, c: SquareClass, t: &EpsilonTable, atoms: &AtomSet) -> Result<CharacterOnA> {
    metaplectic_eta_bracket_pointwise(m, c, t, atoms)?.to_character()
}

/// The parameter of the `c`-conjugate: `(M(c), chi * eta[c])`.
pub fn metaplectic_conjugate(
    m: &FormalRep,
    chi: &CharacterOnA,
    c: SquareClass,
    t: &EpsilonTable,
    atoms: &AtomSet,
) -> Result<(FormalRep, CharacterOnA)> {
    let bracket = metaplectic_eta_bracket(m, c, t, atoms)?;
    let twisted = t.twist(m, &TwistKey::Class(c), atoms)?;
    let chi = chi.mul(&bracket)?;
    // A_M(c) carries the twisted atom names.
    let group = component_group(&twisted, atoms, false)?;
    Ok((twisted, CharacterOnA::from_basis_values(group, chi.basis_values().to_vec())?))
}
