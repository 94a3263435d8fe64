//! Global parameters as lists of cuspidal atoms with local data, and the multiplicity formula.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::char_calculus::CharacterOnA;
use crate::component_groups::{component_group, ComponentElement, ComponentGroup};
use crate::rep_algebra::{AtomSet, FormalRep};
use crate::{f2, Error, Result, Sign};

/// Enumerations range over at most `2^MAX_ENUMERATION_BITS` local character choices.
pub const MAX_ENUMERATION_BITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalAtom {
    pub id: String,
    pub dim: u64,
    /// `+1` orthogonal or conjugate-orthogonal, `-1` symplectic or conjugate-symplectic.
    pub sign: Sign,
    /// The global root number at the center.
    pub eps_half: Sign,
    /// Local parameters at the listed places; unlisted places are unramified with trivial image.
    pub local: BTreeMap<String, FormalRep>,
}

#[derive(Clone, Debug)]
pub struct Place {
    pub label: String,
    pub atoms: AtomSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Linear,
    Metaplectic,
}

#[derive(Clone, Debug)]
pub struct GlobalParameter {
    atoms: Vec<GlobalAtom>,
    places: Vec<Place>,
    local_groups: Vec<(FormalRep, ComponentGroup)>,
}

impl GlobalParameter {
    pub fn new(atoms: Vec<GlobalAtom>, places: Vec<Place>) -> Result<GlobalParameter> {
        let mut seen = HashSet::new();
        for a in &atoms {
            if !seen.insert(a.id.as_str()) {
                return Err(Error::Validation(format!("global atom {:?} listed twice", a.id)));
            }
        }
        let mut labels = HashSet::new();
        for p in &places {
            if !labels.insert(p.label.as_str()) {
                return Err(Error::Validation(format!("place {:?} listed twice", p.label)));
            }
        }
        if let Some(s) = atoms.first().map(|a| a.sign) {
            if let Some(bad) = atoms.iter().find(|a| a.sign != s) {
                return Err(Error::Validation(format!("global atom {:?} has a different sign", bad.id)));
            }
        }
        let mut local_groups = Vec::new();
        for place in &places {
            let mut phi = FormalRep::new(None);
            for a in &atoms {
                let Some(rep) = a.local.get(&place.label) else { continue };
                let d = rep
                    .declared()
                    .ok_or_else(|| Error::Validation(format!("{} at {}: no declared duality", a.id, place.label)))?;
                if d.sign() != a.sign {
                    return Err(Error::Validation(format!("{} at {}: local sign differs from the global one", a.id, place.label)));
                }
                if rep.dim(&place.atoms)? != a.dim {
                    return Err(Error::Validation(format!("{} at {}: local dimension differs from {}", a.id, place.label, a.dim)));
                }
                if phi.declared().is_some_and(|p| p != d) {
                    return Err(Error::Validation(format!("{} at {}: mixed local dualities", a.id, place.label)));
                }
                phi.set_declared(Some(d));
                phi = phi.direct_sum(rep);
            }
            let group = if phi.declared().is_some() { component_group(&phi, &place.atoms, false)? } else { ComponentGroup::trivial() };
            local_groups.push((phi, group));
        }
        for a in &atoms {
            if let Some(v) = a.local.keys().find(|v| !labels.contains(v.as_str())) {
                return Err(Error::UnknownId(format!("place {v:?} of atom {:?}", a.id)));
            }
        }
        Ok(GlobalParameter { atoms, places, local_groups })
    }

    pub fn atoms(&self) -> &[GlobalAtom] {
        &self.atoms
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    fn place_index(&self, v: &str) -> Result<usize> {
        self.places
            .iter()
            .position(|p| p.label == v)
            .ok_or_else(|| Error::UnknownId(format!("place {v:?}")))
    }

    /// `A_phi`, with one generator per global atom.
    pub fn component_group(&self) -> Result<ComponentGroup> {
        let basis = self
            .atoms
            .iter()
            .map(|a| crate::component_groups::BasisElement { atom: a.id.clone(), dim: a.dim, multiplicity: 1 })
            .collect();
        ComponentGroup::from_basis(basis, vec![])
    }

    /// The local parameter at `v` and its component group.
    pub fn local_group(&self, v: &str) -> Result<&(FormalRep, ComponentGroup)> {
        Ok(&self.local_groups[self.place_index(v)?])
    }

    /// The image of the generator of atom `i` in `A_{phi_v}`: its same-type local constituents
    /// of odd multiplicity.
    pub fn diagonal_image(&self, v: &str, i: usize) -> Result<ComponentElement> {
        let atom = self.atoms.get(i).ok_or_else(|| Error::UnknownId(format!("global atom #{i}")))?;
        let (_, group) = self.local_group(v)?;
        let Some(rep) = atom.local.get(v) else { return Ok(ComponentElement(0)) };
        let mut bits = 0;
        for (id, mult) in rep.summands() {
            if mult % 2 == 1 {
                if let Some(g) = group.generator(id) {
                    bits ^= g.0;
                }
            }
        }
        Ok(ComponentElement(bits))
    }

    /// `prod_v eta_v(Delta_v(a_i))` for each atom `i`; unlisted places contribute `+1`.
    pub fn pullback(&self, eta: &GlobalCharacterChoice) -> Result<Vec<Sign>> {
        for v in eta.local.keys() {
            self.place_index(v)?;
        }
        (0..self.atoms.len())
            .map(|i| {
                let mut s = Sign::Plus;
                for (v, chi) in &eta.local {
                    let (_, group) = self.local_group(v)?;
                    if chi.group() != group {
                        return Err(Error::Domain(format!("character at {v} is not on the local component group")));
                    }
                    s *= chi.eval(self.diagonal_image(v, i)?)?;
                }
                Ok(s)
            })
            .collect()
    }

    pub fn multiplicity(&self, eta: &GlobalCharacterChoice) -> Result<u8> {
        Ok(self.pullback(eta)?.iter().all(|s| s.is_plus()) as u8)
    }

    /// Multiplicity against the character `a_i -> eps_half(i)` instead of the trivial one.
    pub fn metaplectic_multiplicity(&self, eta: &GlobalCharacterChoice) -> Result<u8> {
        if let Some(a) = self.atoms.iter().find(|a| a.sign != Sign::Minus) {
            return Err(Error::Domain(format!("global atom {:?} is not symplectic", a.id)));
        }
        let pulled = self.pullback(eta)?;
        Ok(pulled.iter().zip(&self.atoms).all(|(s, a)| *s == a.eps_half) as u8)
    }

    pub fn multiplicity_in(&self, mode: Mode, eta: &GlobalCharacterChoice) -> Result<u8> {
        match mode {
            Mode::Linear => self.multiplicity(eta),
            Mode::Metaplectic => self.metaplectic_multiplicity(eta),
        }
    }

    /// Every choice of local characters (at places with nontrivial component group) with
    /// multiplicity one, in label order.
    pub fn enumerate_automorphic(&self, mode: Mode) -> Result<Vec<GlobalCharacterChoice>> {
        let ramified: Vec<(&str, &ComponentGroup)> = self
            .places
            .iter()
            .zip(&self.local_groups)
            .filter(|(_, (_, g))| g.rank() > 0)
            .map(|(p, (_, g))| (p.label.as_str(), g))
            .collect();
        let total: usize = ramified.iter().map(|(_, g)| g.rank()).sum();
        if total > MAX_ENUMERATION_BITS {
            return Err(Error::Unbounded(format!("{total} local character bits")));
        }
        let mut out = Vec::new();
        for x in 0..1u64 << total {
            // The first place's first basis value is the most significant bit.
            let mut shift = total;
            let mut eta = GlobalCharacterChoice::default();
            for (v, g) in &ramified {
                shift -= g.rank();
                let chunk = (x >> shift) & f2::mask(g.rank());
                let mask = (0..g.rank()).filter(|i| chunk >> (g.rank() - 1 - i) & 1 == 1).fold(0, |m, i| m | 1 << i);
                eta.local.insert(v.to_string(), CharacterOnA::from_mask((*g).clone(), mask)?);
            }
            if self.multiplicity_in(mode, &eta)? == 1 {
                out.push(eta);
            }
        }
        Ok(out)
    }
}

/// Local characters `eta_v`, trivial at every place not listed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GlobalCharacterChoice {
    pub local: BTreeMap<String, CharacterOnA>,
}

impl GlobalCharacterChoice {
    pub fn mul(&self, other: &GlobalCharacterChoice) -> Result<GlobalCharacterChoice> {
        let mut local = self.local.clone();
        for (v, chi) in &other.local {
            let next = match local.get(v) {
                Some(mine) => mine.mul(chi)?,
                None => chi.clone(),
            };
            local.insert(v.clone(), next);
        }
        Ok(GlobalCharacterChoice { local })
    }

    /// The basis values at each listed place, concatenated in place order.
    pub fn label(&self, places: &[Place]) -> String {
        let mut s = String::new();
        for p in places {
            if let Some(chi) = self.local.get(&p.label) {
                for v in chi.basis_values() {
                    s.push(if v.is_plus() { '+' } else { '-' });
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coherence {
    pub product: Sign,
    pub coherent: bool,
    /// Incoherent local data: the central value vanishes and the derivative case applies.
    pub derivative_case: bool,
}

impl fmt::Display for Coherence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coherent {
            f.write_str("coherent")
        } else {
            f.write_str("incoherent (derivative case)")
        }
    }
}

/// The product of local signs; coherent iff it is `+1`.
pub fn coherence<'a>(local: impl IntoIterator<Item = (&'a str, Sign)>) -> Coherence {
    let product = Sign::product(local.into_iter().map(|(_, s)| s));
    Coherence { product, coherent: product.is_plus(), derivative_case: product.is_minus() }
}
