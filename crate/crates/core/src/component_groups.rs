//! Centralizers of formal parameters, their component groups, and the characters eta, eta_c.

use std::fmt;

use crate::f2::{self, MarkedBasis};
use crate::field_model::SquareClass;
use crate::rep_algebra::{AtomKind, AtomSet, Context, FormalRep};
use crate::{Error, Result, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    O,
    Sp,
    GL,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerFactor {
    pub kind: FactorKind,
    pub size: u64,
    pub atom: String,
}

impl fmt::Display for CentralizerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            FactorKind::O => "O",
            FactorKind::Sp => "Sp",
            FactorKind::GL => "GL",
        };
        write!(f, "{name}({})[{}]", self.size, self.atom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CentralizerShape {
    pub factors: Vec<CentralizerFactor>,
}

/// `C(M)`: one `O(m)` per same-type summand, one `Sp(m)` per opposite-type summand,
/// one `GL(p)` per pair of partner atoms.
pub fn centralizer(m: &FormalRep, atoms: &AtomSet) -> Result<CentralizerShape> {
    let declared = m.declared().ok_or_else(|| Error::Domain(format!("{} has no declared duality", m.render())))?;
    m.check(atoms)?;
    let mut factors = Vec::new();
    for (id, mult) in m.summands() {
        let atom = atoms.get(id)?;
        match &atom.kind {
            AtomKind::Dual(d) => {
                let kind = if d.sign() == declared.sign() { FactorKind::O } else { FactorKind::Sp };
                factors.push(CentralizerFactor { kind, size: *mult, atom: id.clone() });
            }
            AtomKind::NonDual { partner, .. } => {
                let pos = |x: &str| m.summands().iter().position(|(s, _)| s == x);
                if pos(id) < pos(partner) {
                    factors.push(CentralizerFactor { kind: FactorKind::GL, size: *mult, atom: id.clone() });
                }
            }
        }
    }
    Ok(CentralizerShape { factors })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub atom: String,
    pub dim: u64,
    pub multiplicity: u64,
}

/// An element of `A`, as a bit mask over the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ComponentElement(pub u64);

impl std::ops::Add for ComponentElement {
    type Output = ComponentElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: ComponentElement) -> ComponentElement {
        ComponentElement(self.0 ^ rhs.0)
    }
}

/// `A = (Z/2)^k` with basis the same-type summands, cut down by F2 constraints
/// (the parity of `dim M^a` for `A+`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ComponentGroup {
    basis: Vec<BasisElement>,
    constraints: Vec<u64>,
    /// Rank of the first factor, for groups built by [`ComponentGroup::product`].
    first_factor: Option<usize>,
}

impl ComponentGroup {
    pub fn trivial() -> ComponentGroup {
        ComponentGroup::default()
    }

    pub fn from_basis(basis: Vec<BasisElement>, constraints: Vec<u64>) -> Result<ComponentGroup> {
        if basis.len() > f2::MAX_BITS {
            return Err(Error::Unbounded(format!("component group of rank {}", basis.len())));
        }
        Ok(ComponentGroup { basis, constraints, first_factor: None })
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn constraints(&self) -> &[u64] {
        &self.constraints
    }

    /// Rank of the ambient `A`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn subgroup_basis(&self) -> MarkedBasis {
        MarkedBasis::kernel(&self.constraints, self.rank())
    }

    /// Rank of the subgroup cut out by the constraints.
    pub fn subgroup_rank(&self) -> usize {
        self.subgroup_basis().dim()
    }

    pub fn is_restricted(&self) -> bool {
        self.subgroup_rank() < self.rank()
    }

    pub fn in_ambient(&self, a: ComponentElement) -> bool {
        a.0 & !f2::mask(self.rank()) == 0
    }

    pub fn contains(&self, a: ComponentElement) -> bool {
        self.in_ambient(a) && self.constraints.iter().all(|&c| !f2::dot(c, a.0))
    }

    pub fn elements(&self) -> Vec<ComponentElement> {
        self.subgroup_basis().elements().map(ComponentElement).collect()
    }

    pub fn generator(&self, atom: &str) -> Option<ComponentElement> {
        self.basis.iter().position(|b| b.atom == atom).map(|i| ComponentElement(1 << i))
    }

    /// The direct product; the second factor's bits sit above the first's.
    pub fn product(&self, other: &ComponentGroup) -> Result<ComponentGroup> {
        let shift = self.rank();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().map(|c| c << shift));
        let mut group = ComponentGroup::from_basis(basis, constraints)?;
        group.first_factor = Some(shift);
        Ok(group)
    }

    /// Splits an element of a product group into its two factors.
    pub fn split(&self, a: ComponentElement) -> (ComponentElement, ComponentElement) {
        let k = self.first_factor.unwrap_or(self.rank());
        (ComponentElement(a.0 & f2::mask(k)), ComponentElement(if k >= 64 { 0 } else { a.0 >> k }))
    }

    pub fn join(&self, a: ComponentElement, b: ComponentElement) -> ComponentElement {
        ComponentElement(a.0 | (b.0 << self.first_factor.unwrap_or(self.rank())))
    }

    /// The image of the central `-1`: basis elements of odd multiplicity.
    pub fn central_element(&self) -> ComponentElement {
        ComponentElement(
            self.basis
                .iter()
                .enumerate()
                .filter(|(_, b)| b.multiplicity % 2 == 1)
                .fold(0, |acc, (i, _)| acc | 1 << i),
        )
    }

    /// `a -> dim M^a mod 2` as a functional.
    pub fn parity_functional(&self) -> u64 {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.dim % 2 == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn render_element(&self, a: ComponentElement) -> String {
        let parts: Vec<&str> = f2::bits(a.0)
            .filter_map(|i| self.basis.get(i).map(|b| b.atom.as_str()))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.subgroup_rank() {
            0 => f.write_str("1"),
            1 => f.write_str("Z/2"),
            r => write!(f, "(Z/2)^{r}"),
        }
    }
}

/// `A_M`, or `A_M+` when `use_plus` is set (selfdual `M` only).
pub fn component_group(m: &FormalRep, atoms: &AtomSet, use_plus: bool) -> Result<ComponentGroup> {
    let declared = m.declared().ok_or_else(|| Error::Domain(format!("{} has no declared duality", m.render())))?;
    if use_plus && declared.context() == Context::Conjugate {
        return Err(Error::Domain("conjugate-dual parameters use the full component group".into()));
    }
    m.check(atoms)?;
    let mut basis = Vec::new();
    for (id, mult) in m.summands() {
        let atom = atoms.get(id)?;
        if atom.duality() == Some(declared) {
            basis.push(BasisElement { atom: id.clone(), dim: atom.dim, multiplicity: *mult });
        }
    }
    let mut group = ComponentGroup::from_basis(basis, Vec::new())?;
    if use_plus {
        group.constraints = vec![group.parity_functional()];
    }
    Ok(group)
}

/// `M^a`: one copy of each basis summand in the support of `a`.
pub fn eigenspace(m: &FormalRep, group: &ComponentGroup, a: ComponentElement) -> Result<FormalRep> {
    if !group.in_ambient(a) {
        return Err(Error::Domain(format!("element {:#b} outside a group of rank {}", a.0, group.rank())));
    }
    let mut out = FormalRep::new(m.declared());
    for i in f2::bits(a.0) {
        out.add(&group.basis[i].atom, 1);
    }
    Ok(out)
}

/// `eta(a) = (-1)^dim M^a`.
pub fn eta(group: &ComponentGroup, a: ComponentElement) -> Result<Sign> {
    if !group.in_ambient(a) {
        return Err(Error::Domain(format!("element {:#b} outside the component group", a.0)));
    }
    Ok(Sign::from_parity(f2::dot(a.0, group.parity_functional())))
}

/// `eta_c(a) = det(M^a)(c)`.
pub fn eta_c(m: &FormalRep, group: &ComponentGroup, c: SquareClass, a: ComponentElement, atoms: &AtomSet) -> Result<Sign> {
    let classes = atoms.field().classes();
    if !classes.contains(c) {
        return Err(Error::Domain("square class outside the field's group".into()));
    }
    eigenspace(m, group, a)?.det(atoms)?.eval(c)
}
