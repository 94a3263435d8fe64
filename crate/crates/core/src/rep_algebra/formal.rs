use std::fmt;

use super::atom::{AtomKind, AtomSet, Context, Duality};
use crate::field_model::QuadraticCharacter;
use crate::{Error, Result, Sign};

/// A finite direct sum of atoms, kept in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalRep {
    summands: Vec<(String, u64)>,
    declared: Option<Duality>,
}

/// A representation split into its dual summands, hyperbolic blocks `P + P'`, and
/// non-dual summands whose partner is missing.
#[derive(Clone, Debug, Default)]
pub(crate) struct Blocks {
    pub dual: Vec<(String, u64)>,
    pub hyper: Vec<(String, String, u64)>,
    pub loose: Vec<(String, u64)>,
}

impl FormalRep {
    pub fn new(declared: Option<Duality>) -> FormalRep {
        FormalRep { summands: Vec::new(), declared }
    }

    pub fn empty() -> FormalRep {
        FormalRep::default()
    }

    pub fn of(declared: Duality, summands: &[(&str, u64)]) -> FormalRep {
        let mut rep = FormalRep::new(Some(declared));
        for (id, m) in summands {
            rep.add(id, *m);
        }
        rep
    }

    pub fn with(mut self, id: &str, mult: u64) -> FormalRep {
        self.add(id, mult);
        self
    }

    pub fn add(&mut self, id: &str, mult: u64) {
        if mult == 0 {
            return;
        }
        match self.summands.iter_mut().find(|(s, _)| s == id) {
            Some((_, m)) => *m += mult,
            None => self.summands.push((id.to_string(), mult)),
        }
    }

    pub fn summands(&self) -> &[(String, u64)] {
        &self.summands
    }

    pub fn declared(&self) -> Option<Duality> {
        self.declared
    }

    pub fn set_declared(&mut self, d: Option<Duality>) {
        self.declared = d;
    }

    pub fn declared_as(mut self, d: Duality) -> FormalRep {
        self.declared = Some(d);
        self
    }

    pub fn multiplicity(&self, id: &str) -> u64 {
        self.summands.iter().find(|(s, _)| s == id).map_or(0, |(_, m)| *m)
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, other: &FormalRep) -> FormalRep {
        let declared = if self.is_empty() {
            other.declared.or(self.declared)
        } else if other.is_empty() || self.declared == other.declared {
            self.declared.or(other.declared)
        } else {
            None
        };
        let mut out = FormalRep { summands: self.summands.clone(), declared };
        for (id, m) in &other.summands {
            out.add(id, *m);
        }
        out
    }

    pub fn dim(&self, atoms: &AtomSet) -> Result<u64> {
        let mut d = 0u64;
        for (id, m) in &self.summands {
            d = d
                .checked_add(atoms.get(id)?.dim.checked_mul(*m).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
        }
        Ok(d)
    }

    pub(crate) fn blocks(&self, atoms: &AtomSet) -> Result<Blocks> {
        let mut blocks = Blocks::default();
        for (id, m) in &self.summands {
            let atom = atoms.get(id)?;
            match &atom.kind {
                AtomKind::Dual(_) => blocks.dual.push((id.clone(), *m)),
                AtomKind::NonDual { partner, .. } => {
                    let pm = self.multiplicity(partner);
                    let h = pm.min(*m);
                    let pos = |x: &str| self.summands.iter().position(|(s, _)| s == x);
                    if h > 0 && pos(id) < pos(partner) {
                        blocks.hyper.push((id.clone(), partner.clone(), h));
                    }
                    if *m > h {
                        blocks.loose.push((id.clone(), *m - h));
                    }
                }
            }
        }
        Ok(blocks)
    }

    /// The determinant; each hyperbolic block contributes trivially.
    pub fn det(&self, atoms: &AtomSet) -> Result<QuadraticCharacter> {
        let blocks = self.blocks(atoms)?;
        let mut det = QuadraticCharacter::trivial(atoms.field().classes().rank());
        for (id, m) in blocks.dual.iter().chain(&blocks.loose) {
            det = det * atoms.det(id)?.pow(*m);
        }
        Ok(det)
    }

    pub fn det_at_minus_one(&self, atoms: &AtomSet) -> Result<Sign> {
        let blocks = self.blocks(atoms)?;
        let mut s = Sign::Plus;
        for (id, m) in blocks.dual.iter().chain(&blocks.loose) {
            s *= atoms.det_at_minus_one(id)?.pow(*m);
        }
        Ok(s)
    }

    /// The common context of all summands, or `None` for the empty sum.
    pub fn context(&self, atoms: &AtomSet) -> Result<Option<Context>> {
        let mut ctx = self.declared.map(Duality::context);
        for (id, _) in &self.summands {
            let c = atoms.get(id)?.context();
            match ctx {
                Some(prev) if prev != c => {
                    return Err(Error::Domain(format!(
                        "{} mixes selfdual and conjugate-dual pieces",
                        self.render()
                    )))
                }
                _ => ctx = Some(c),
            }
        }
        Ok(ctx)
    }

    /// Checks the parity conditions a declared duality imposes on the summands.
    pub fn check(&self, atoms: &AtomSet) -> Result<()> {
        self.context(atoms)?;
        let Some(declared) = self.declared else {
            for (id, _) in &self.summands {
                atoms.get(id)?;
            }
            return Ok(());
        };
        for (id, m) in &self.summands {
            let atom = atoms.get(id)?;
            match &atom.kind {
                AtomKind::Dual(d) => {
                    if d.sign() != declared.sign() && m % 2 == 1 {
                        return Err(Error::Validation(format!(
                            "{declared} representation contains the {d} summand {id:?} with odd multiplicity {m}"
                        )));
                    }
                }
                AtomKind::NonDual { partner, .. } => {
                    let pm = self.multiplicity(partner);
                    if pm != *m {
                        return Err(Error::Validation(format!(
                            "{declared} representation has {id:?} with multiplicity {m} but its partner {partner:?} with {pm}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands
            .iter()
            .map(|(id, m)| if *m == 1 { id.clone() } else { format!("{m}*{id}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for FormalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn overflow() -> Error {
    Error::Domain("dimension overflow".into())
}

/// `det(M)^dim N * det(N)^dim M`.
pub fn det_of_tensor(m: &FormalRep, n: &FormalRep, atoms: &AtomSet) -> Result<QuadraticCharacter> {
    Ok(m.det(atoms)?.pow(n.dim(atoms)?) * n.det(atoms)?.pow(m.dim(atoms)?))
}
