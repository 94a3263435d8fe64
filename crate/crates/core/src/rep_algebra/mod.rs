//! Formal Weil-Deligne representations and their root-number tables.

mod atom;
mod epsilon;
mod formal;
mod validate;

pub use atom::{one_dim_conj_type, Atom, AtomKind, AtomSet, Context, Duality};
pub use epsilon::{real, EpsilonTable, TwistKey};
pub use formal::{det_of_tensor, FormalRep};
pub use validate::{validate_epsilon, Axiom, ValidationReport, Violation};

use crate::field_model::SquareClass;
use crate::{Error, FourthRoot, Result, Sign};

/// Fills root numbers for every 1-dimensional orthogonal atom from values on the
/// square-class generators, extended by `eps(a) eps(b) = eps(ab) (a, b)`.
///
/// `generator_eps[i]` must square to `(g_i, g_i)`; `None` picks `1` or `i` accordingly.
/// Pair entries are `eps(X (x) Y) = eps(det X * det Y)` and each atom's own value is
/// `eps(det X)`, all at the table's base character.
pub fn quadratic_root_numbers(
    table: &mut EpsilonTable,
    atoms: &mut AtomSet,
    generator_eps: Option<&[FourthRoot]>,
) -> Result<()> {
    if table.context() != Context::Selfdual {
        return Err(Error::Domain("quadratic root numbers live in selfdual tables".into()));
    }
    let classes = atoms.field().classes().clone();
    let r = classes.rank();
    let mut gens = Vec::with_capacity(r);
    for i in 0..r {
        let g = SquareClass(1 << i);
        let gg = classes.pairing(g, g);
        if gg != classes.pairing(g, classes.minus_one()) {
            return Err(Error::Validation(format!(
                "pairing has (g, g) != (g, -1) at {}; no root-number function exists",
                classes.labels()[i]
            )));
        }
        let e = match generator_eps {
            Some(v) => *v.get(i).ok_or_else(|| Error::Validation("too few generator values".into()))?,
            None if gg.is_plus() => FourthRoot::ONE,
            None => FourthRoot::I,
        };
        if e.square() != FourthRoot::from(gg) {
            return Err(Error::Validation(format!("generator value {e} does not square to {gg}")));
        }
        gens.push(e);
    }
    let eps_of = |x: SquareClass| -> FourthRoot {
        let mut acc = FourthRoot::ONE;
        let bits: Vec<usize> = crate::f2::bits(x.0).collect();
        for (k, &i) in bits.iter().enumerate() {
            acc *= gens[i];
            for &j in &bits[..k] {
                acc *= FourthRoot::from(classes.pairing(SquareClass(1 << i), SquareClass(1 << j)));
            }
        }
        acc
    };
    let class_of = |chi: crate::field_model::QuadraticCharacter| -> SquareClass {
        classes
            .elements()
            .find(|d| classes.hilbert_character(*d) == chi)
            .expect("pairing is perfect")
    };
    let lines: Vec<(String, SquareClass)> = atoms
        .iter()
        .filter(|a| a.dim == 1 && a.duality() == Some(Duality::Orthogonal))
        .map(|a| (a.id.clone(), class_of(a.det.expect("dual atoms carry a determinant"))))
        .collect();
    let psi = table.base_psi().clone();
    for (i, (a, x)) in lines.iter().enumerate() {
        for (b, y) in &lines[..=i] {
            table.set_pair(a, b, &psi, eps_of(*x + *y));
        }
    }
    let mut rebuilt = AtomSet::empty(atoms.field().clone());
    for atom in atoms.iter() {
        let mut atom = atom.clone();
        if let Some((_, x)) = lines.iter().find(|(id, _)| *id == atom.id) {
            atom.eps_self.insert(psi.clone(), eps_of(*x));
        }
        rebuilt.insert(atom)?;
    }
    rebuilt.check_complete()?;
    *atoms = rebuilt;
    Ok(())
}

/// The identity `eps(a) eps(b) = eps(a + b) (a, b)` behind [`quadratic_root_numbers`],
/// checked on every pair of classes; used by tests.
pub fn quadratic_cocycle_holds(table: &EpsilonTable, atoms: &AtomSet, unit: &str) -> Result<bool> {
    let classes = atoms.field().classes();
    let psi = table.base_psi();
    let lines: Vec<&Atom> = atoms.iter().filter(|a| a.dim == 1 && a.duality() == Some(Duality::Orthogonal)).collect();
    for x in &lines {
        for y in &lines {
            let ex = table.pair_value(&x.id, unit, psi, atoms)?;
            let ey = table.pair_value(&y.id, unit, psi, atoms)?;
            let exy = table.pair_value(&x.id, &y.id, psi, atoms)?;
            let dx = classes.elements().find(|d| Some(classes.hilbert_character(*d)) == x.det).unwrap();
            let dy = classes.elements().find(|d| Some(classes.hilbert_character(*d)) == y.det).unwrap();
            let s: Sign = classes.pairing(dx, dy);
            if ex * ey != exy * s {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
