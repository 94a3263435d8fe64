//! Characters of component groups built from root numbers.

mod consistency;
mod distinguished;
mod local;
mod metaplectic;

pub use consistency::{hermitian_psi_change_check, metaplectic_psi_prop_check, pure_inner_form_of, ConsistencyReport, InnerForm, Mismatch};
pub use distinguished::{distinguished, distinguished_pointwise, skew_hermitian_orderings, Case, CaseDescriptor};
pub use local::{
    chi_conj, chi_conj_pointwise, chi_conj_value, chi_self, chi_self_at, chi_self_pointwise, chi_self_value, eta_c_character, eta_c_pointwise,
    eta_character, eta_pointwise,
};
pub use metaplectic::{metaplectic_conjugate, metaplectic_eta_bracket, metaplectic_eta_bracket_pointwise, metaplectic_eta_bracket_value};

use std::fmt;

use crate::component_groups::{ComponentElement, ComponentGroup};
use crate::{Error, Result, Sign};

/// Anything that assigns a sign to each element of a component group.
pub trait ComponentCharacter {
    fn domain(&self) -> &ComponentGroup;
    fn value_at(&self, a: ComponentElement) -> Result<Sign>;

    fn to_character(&self) -> Result<CharacterOnA> {
        let group = self.domain().clone();
        let values = group
            .subgroup_basis()
            .vectors()
            .iter()
            .map(|&v| self.value_at(ComponentElement(v)))
            .collect::<Result<Vec<_>>>()?;
        CharacterOnA::from_basis_values(group, values)
    }
}

/// A character given by a closure, evaluated point by point.
pub struct PointwiseCharacter<'a> {
    group: ComponentGroup,
    f: Box<dyn Fn(ComponentElement) -> Result<Sign> + 'a>,
}

impl<'a> PointwiseCharacter<'a> {
    pub fn new(group: ComponentGroup, f: impl Fn(ComponentElement) -> Result<Sign> + 'a) -> PointwiseCharacter<'a> {
        PointwiseCharacter { group, f: Box::new(f) }
    }
}

impl ComponentCharacter for PointwiseCharacter<'_> {
    fn domain(&self) -> &ComponentGroup {
        &self.group
    }

    fn value_at(&self, a: ComponentElement) -> Result<Sign> {
        if !self.group.contains(a) {
            return Err(Error::Domain(format!(
                "element {} lies outside the domain",
                self.group.render_element(a)
            )));
        }
        (self.f)(a)
    }
}

/// A character stored by its values on the canonical basis of its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterOnA {
    group: ComponentGroup,
    values: Vec<Sign>,
}

impl CharacterOnA {
    pub fn trivial(group: ComponentGroup) -> CharacterOnA {
        let n = group.subgroup_rank();
        CharacterOnA { group, values: vec![Sign::Plus; n] }
    }

    pub fn from_basis_values(group: ComponentGroup, values: Vec<Sign>) -> Result<CharacterOnA> {
        if values.len() != group.subgroup_rank() {
            return Err(Error::Domain(format!(
                "{} basis values for a group of rank {}",
                values.len(),
                group.subgroup_rank()
            )));
        }
        Ok(CharacterOnA { group, values })
    }

    /// The character `a -> (-1)^<mask, a>` of a full group.
    pub fn from_mask(group: ComponentGroup, mask: u64) -> Result<CharacterOnA> {
        let values = group
            .subgroup_basis()
            .vectors()
            .iter()
            .map(|&v| Sign::from_parity(crate::f2::dot(v, mask)))
            .collect();
        CharacterOnA::from_basis_values(group, values)
    }

    pub fn group(&self) -> &ComponentGroup {
        &self.group
    }

    pub fn basis_values(&self) -> &[Sign] {
        &self.values
    }

    pub fn eval(&self, a: ComponentElement) -> Result<Sign> {
        if !self.group.contains(a) {
            return Err(Error::Domain(format!("element {} lies outside the domain", self.group.render_element(a))));
        }
        let coords = self
            .group
            .subgroup_basis()
            .decompose(a.0)
            .ok_or_else(|| Error::Domain("element outside the subgroup".into()))?;
        Ok(Sign::product(crate::f2::bits(coords).map(|i| self.values[i])))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|s| s.is_plus())
    }

    pub fn mul(&self, other: &CharacterOnA) -> Result<CharacterOnA> {
        if self.group != other.group {
            return Err(Error::Domain("characters live on different groups".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a * *b).collect();
        Ok(CharacterOnA { group: self.group.clone(), values })
    }

    /// `chi x chi'` on the product group.
    pub fn product(&self, other: &CharacterOnA) -> Result<CharacterOnA> {
        let group = self.group.product(&other.group)?;
        let split = group.clone();
        PointwiseCharacter::new(group, move |a| {
            let (x, y) = split.split(a);
            Ok(self.eval(x)? * other.eval(y)?)
        })
        .to_character()
    }

    /// Basis values as `[+1, -1, ...]`, in declaration order.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(Sign::to_string).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl ComponentCharacter for CharacterOnA {
    fn domain(&self) -> &ComponentGroup {
        &self.group
    }

    fn value_at(&self, a: ComponentElement) -> Result<Sign> {
        self.eval(a)
    }
}

impl fmt::Display for CharacterOnA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Pairs `(a, b)` with `chi(a + b) != chi(a) chi(b)`, evaluating `chi` at every element.
pub fn homomorphism_violations<C: ComponentCharacter + ?Sized>(chi: &C) -> Result<Vec<(ComponentElement, ComponentElement)>> {
    let basis = chi.domain().subgroup_basis();
    let n = 1u64 << basis.dim();
    let values = (0..n)
        .map(|c| chi.value_at(ComponentElement(basis.combine(c))))
        .collect::<Result<Vec<_>>>()?;
    let mut bad = Vec::new();
    for x in 0..n {
        for y in x..n {
            if values[(x ^ y) as usize] != values[x as usize] * values[y as usize] {
                bad.push((ComponentElement(basis.combine(x)), ComponentElement(basis.combine(y))));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component_groups::BasisElement;

    fn group(dims: &[u64], plus: bool) -> ComponentGroup {
        let basis: Vec<BasisElement> = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| BasisElement { atom: format!("M{i}"), dim: d, multiplicity: 1 })
            .collect();
        let mut g = ComponentGroup::from_basis(basis, vec![]).unwrap();
        if plus {
            let f = g.parity_functional();
            g = ComponentGroup::from_basis(g.basis().to_vec(), vec![f]).unwrap();
        }
        g
    }

    #[test]
    fn evaluation_extends_multiplicatively() {
        let g = group(&[1, 2, 3], false);
        let chi = CharacterOnA::from_basis_values(g, vec![Sign::Minus, Sign::Plus, Sign::Minus]).unwrap();
        assert_eq!(chi.eval(ComponentElement(0b101)).unwrap(), Sign::Plus);
        assert_eq!(chi.eval(ComponentElement(0b011)).unwrap(), Sign::Minus);
        assert!(chi.eval(ComponentElement(0b1000)).is_err());
        assert!(homomorphism_violations(&chi).unwrap().is_empty());
        assert_eq!(chi.render(), "[-1, +1, -1]");
    }

    #[test]
    fn plus_subgroup_characters() {
        let g = group(&[1, 2, 3], true);
        assert_eq!(g.subgroup_rank(), 2);
        let chi = CharacterOnA::from_basis_values(g.clone(), vec![Sign::Plus, Sign::Minus]).unwrap();
        assert!(chi.eval(ComponentElement(0b001)).is_err());
        assert_eq!(chi.eval(ComponentElement(0b101)).unwrap(), Sign::Minus);
        assert_eq!(chi.eval(ComponentElement(0b010)).unwrap(), Sign::Plus);
        let pw = PointwiseCharacter::new(g, |a| Ok(Sign::from_parity(a.0 & 0b100 != 0)));
        assert_eq!(pw.to_character().unwrap(), chi);
    }

    #[test]
    fn non_characters_are_caught() {
        let g = group(&[1, 1], false);
        let bad = PointwiseCharacter::new(g, |a| Ok(Sign::from_parity(a.0 == 0b11)));
        assert!(!homomorphism_violations(&bad).unwrap().is_empty());
    }

    #[test]
    fn products_and_masks() {
        let g1 = group(&[2], false);
        let g2 = group(&[1, 1], true);
        let a = CharacterOnA::from_mask(g1.clone(), 1).unwrap();
        let b = CharacterOnA::trivial(g2.clone());
        let p = a.product(&b).unwrap();
        assert_eq!(p.group().rank(), 3);
        assert_eq!(p.basis_values(), &[Sign::Minus, Sign::Plus]);
        assert!(a.mul(&a).unwrap().is_trivial());
        assert!(a.mul(&b).is_err());
    }
}
