//! Property suites over randomized fixtures. Each returns a short summary or the first failure.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vogan_core::char_calculus::{
    chi_conj, chi_conj_pointwise, chi_self_at, chi_self_pointwise, distinguished, distinguished_pointwise,
    eta_c_pointwise, eta_pointwise, hermitian_psi_change_check, homomorphism_violations,
    metaplectic_eta_bracket_pointwise, metaplectic_psi_prop_check, skew_hermitian_orderings, Case, CaseDescriptor,
    ComponentCharacter,
};
use vogan_core::classifier::{classify, unramified_build, unramified_classify, UnramifiedRep};
use vogan_core::component_groups::{component_group, eigenspace, ComponentGroup};
use vogan_core::field_model::{LocalFieldModel, QuadraticCharacter, Ramification, SquareClass};
use vogan_core::global_packets::coherence;
use vogan_core::rep_algebra::{validate_epsilon, Axiom, Duality, FormalRep};
use vogan_core::{Error, Sign};

use super::*;

pub type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn hom<C: ComponentCharacter + ?Sized>(chi: &C, what: &str) -> Result<(), String> {
    let bad = homomorphism_violations(chi).map_err(|e| format!("{what}: {e}"))?;
    ensure!(bad.is_empty(), "{what}: {} non-multiplicative pairs, first {:?}", bad.len(), bad[0]);
    Ok(())
}

fn even(atoms: &AtomSet) -> impl Fn(&FormalRep) -> bool + '_ {
    move |r| r.dim(atoms).unwrap() % 2 == 0
}

fn odd(atoms: &AtomSet) -> impl Fn(&FormalRep) -> bool + '_ {
    move |r| r.dim(atoms).unwrap() % 2 == 1
}

fn class_of(classes: &vogan_core::field_model::SquareClassGroup, chi: QuadraticCharacter) -> SquareClass {
    classes.elements().find(|d| classes.hilbert_character(*d) == chi).unwrap()
}

/// Every character produced by the calculus is multiplicative, evaluated pointwise.
pub fn homomorphy(tables: usize, seed: u64) -> Outcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut characters = 0usize;
    for _ in 0..tables / 2 {
        let fx = random_selfdual(&mut rng);
        let (atoms, t) = (&fx.atoms, &fx.table);
        let pool = ids(atoms);
        for d in [Duality::Orthogonal, Duality::Symplectic] {
            let m = random_rep(&mut rng, atoms, &pool, d, 3);
            let g = component_group(&m, atoms, false).map_err(|e| e.to_string())?;
            ensure!(g.rank() <= 10, "component group too large");
            hom(&eta_pointwise(&g), "eta")?;
            for c in atoms.field().classes().elements() {
                hom(&eta_c_pointwise(&m, &g, c, atoms), "eta_c")?;
            }
            characters += 1 + atoms.field().classes().order() as usize;
        }
        for (dm, dn) in [
            (Duality::Orthogonal, Duality::Orthogonal),
            (Duality::Symplectic, Duality::Orthogonal),
            (Duality::Orthogonal, Duality::Symplectic),
            (Duality::Symplectic, Duality::Symplectic),
        ] {
            let (Some(m), Some(n)) = (
                random_rep_where(&mut rng, atoms, &pool, dm, even(atoms)),
                random_rep_where(&mut rng, atoms, &pool, dn, even(atoms)),
            ) else {
                continue;
            };
            hom(&chi_self_pointwise(&m, &n, fx.psi(), t, atoms).map_err(|e| e.to_string())?, "chi_self")?;
            characters += 1;
            let base = chi_self_at(&m, &n, fx.psi(), t, atoms).map_err(|e| e.to_string())?;
            for c in atoms.field().classes().elements() {
                let other = chi_self_at(&m, &n, &fx.psi().translate(c), t, atoms).map_err(|e| e.to_string())?;
                ensure!(other == base, "chi_self depends on the additive character");
            }
        }
        let symplectic: Vec<&str> = atoms.iter().filter(|a| a.duality() == Some(Duality::Symplectic)).map(|a| a.id.as_str()).collect();
        if !symplectic.is_empty() {
            let m = random_rep(&mut rng, atoms, &symplectic, Duality::Symplectic, 3);
            for c in atoms.field().classes().elements() {
                hom(&metaplectic_eta_bracket_pointwise(&m, c, t, atoms).map_err(|e| e.to_string())?, "eta[c]")?;
                characters += 1;
            }
        }
        let m = random_rep(&mut rng, atoms, &pool, Duality::Symplectic, 2);
        if let Some(n) = random_rep_where(&mut rng, atoms, &pool, Duality::Orthogonal, even(atoms)) {
            let desc = CaseDescriptor::new(Case::OrthogonalBessel, fx.psi().clone());
            hom(&distinguished_pointwise(&desc, &m, &n, t, atoms).map_err(|e| e.to_string())?, "orthogonal distinguished")?;
            characters += 1;
        }
        let trivial_odd = |r: &FormalRep| r.dim(atoms).unwrap() % 2 == 1 && r.det(atoms).unwrap().is_trivial();
        if let Some(n) = random_rep_where(&mut rng, atoms, &pool, Duality::Orthogonal, trivial_odd) {
            let desc = CaseDescriptor::new(Case::SymplecticMetaplectic, fx.psi().clone());
            hom(&distinguished_pointwise(&desc, &m, &n, t, atoms).map_err(|e| e.to_string())?, "metaplectic distinguished")?;
            characters += 1;
        }
    }
    for _ in 0..tables - tables / 2 {
        let fx = random_conjugate(&mut rng);
        let (atoms, t) = (&fx.atoms, &fx.table);
        let pool = ids(atoms);
        let closed: Vec<&str> = pool.iter().copied().filter(|id| *id != "Z").collect();
        for dm in [Duality::ConjOrthogonal, Duality::ConjSymplectic] {
            let m = random_rep(&mut rng, atoms, &pool, dm, 3);
            let g = component_group(&m, atoms, false).map_err(|e| e.to_string())?;
            hom(&eta_pointwise(&g), "eta")?;
            for dn in [Duality::ConjOrthogonal, Duality::ConjSymplectic] {
                let n = random_rep(&mut rng, atoms, &pool, dn, 3);
                hom(&chi_conj_pointwise(&m, &n, fx.psi(), t, atoms).map_err(|e| e.to_string())?, "chi_conj")?;
                characters += 2;
            }
        }
        let psi0 = fx.psi().clone();
        let cases = [
            (Case::HermitianBessel, Duality::ConjSymplectic, Duality::ConjOrthogonal),
            (Case::SkewHermitianOdd, Duality::ConjOrthogonal, Duality::ConjOrthogonal),
            (Case::SkewHermitianEven, Duality::ConjSymplectic, Duality::ConjSymplectic),
        ];
        for (case, dm, dn) in cases {
            let want = |d: Duality| move |r: &FormalRep| (r.dim(atoms).unwrap() % 2 == 1) == (d == Duality::ConjOrthogonal);
            let (Some(m), Some(n)) = (
                random_rep_where(&mut rng, atoms, &closed, dm, want(dm)),
                random_rep_where(&mut rng, atoms, &closed, dn, want(dn)),
            ) else {
                continue;
            };
            let mut desc = CaseDescriptor::new(case, psi0.clone());
            if case != Case::SkewHermitianEven {
                desc.psi0 = Some(psi0.clone());
            }
            if case.is_skew() {
                desc.mu = Some("mu".into());
                let (a, b) = skew_hermitian_orderings(&desc, &m, &n, t, atoms).map_err(|e| e.to_string())?;
                ensure!(a == b, "skew-hermitian orderings disagree on {} / {}", m.render(), n.render());
            }
            hom(&distinguished_pointwise(&desc, &m, &n, t, atoms).map_err(|e| e.to_string())?, case.name())?;
            distinguished(&desc, &m, &n, t, atoms).map_err(|e| e.to_string())?;
            characters += 1;
        }
    }
    Ok(format!("{tables} tables, {characters} characters"))
}

/// Same-sign conjugate-dual pairs give the trivial character; opposite signs transform by
/// `eta^dim N` when `psi0` is translated by a non-norm.
pub fn conjugate_sign_laws(tables: usize, seed: u64) -> Outcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut trivial, mut translated) = (0, 0);
    for _ in 0..tables {
        let fx = random_conjugate(&mut rng);
        let (atoms, t) = (&fx.atoms, &fx.table);
        let pool = ids(atoms);
        let tt = non_norm(atoms.field());
        let psi_t = fx.psi().translate(tt);
        for dm in [Duality::ConjOrthogonal, Duality::ConjSymplectic] {
            for dn in [Duality::ConjOrthogonal, Duality::ConjSymplectic] {
                let m = random_rep(&mut rng, atoms, &pool, dm, 3);
                let n = random_rep(&mut rng, atoms, &pool, dn, 3);
                let chi = chi_conj(&m, &n, fx.psi(), t, atoms).map_err(|e| e.to_string())?;
                if dm.sign() == dn.sign() {
                    ensure!(chi.is_trivial(), "same-sign chi_conj is {} for {} / {}", chi, m.render(), n.render());
                    trivial += 1;
                } else {
                    let moved = chi_conj_pointwise(&m, &n, &psi_t, t, atoms).map_err(|e| e.to_string())?;
                    let g = chi.group().clone();
                    let dim_n = n.dim(atoms).unwrap();
                    for a in g.elements() {
                        let eta = Sign::from_parity(eigenspace(&m, &g, a).unwrap().dim(atoms).unwrap() % 2 == 1).pow(dim_n);
                        let lhs = moved.value_at(a).map_err(|e| e.to_string())?;
                        ensure!(lhs == chi.eval(a).unwrap() * eta, "translate law fails at {}", g.render_element(a));
                    }
                    translated += 1;
                }
            }
        }
    }
    Ok(format!("{trivial} same-sign, {translated} opposite-sign pairs"))
}

/// `chi_self(a) = (det M^a, det N)` for orthogonal even `M`, `N` built from quadratic characters.
pub fn hilbert_pairing_law(trials: usize, seed: u64) -> Outcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checked = 0;
    for i in 0..trials {
        let field = [LocalFieldModel::padic_odd(1).unwrap(), LocalFieldModel::padic_odd(3).unwrap(), LocalFieldModel::real()][i % 3].clone();
        let fx = quadratic_family(&mut rng, field);
        let (atoms, t) = (&fx.atoms, &fx.table);
        let classes = atoms.field().classes().clone();
        let lines: Vec<&str> = atoms.iter().filter(|a| a.dim == 1).map(|a| a.id.as_str()).collect();
        let (Some(m), Some(n)) = (
            random_rep_where(&mut rng, atoms, &lines, Duality::Orthogonal, even(atoms)),
            random_rep_where(&mut rng, atoms, &lines, Duality::Orthogonal, even(atoms)),
        ) else {
            continue;
        };
        let chi = chi_self_at(&m, &n, fx.psi(), t, atoms).map_err(|e| e.to_string())?;
        let dn = class_of(&classes, n.det(atoms).unwrap());
        for a in chi.group().elements() {
            let dma = class_of(&classes, eigenspace(&m, chi.group(), a).unwrap().det(atoms).unwrap());
            let expected = classes.pairing(dma, dn);
            ensure!(chi.eval(a).unwrap() == expected, "chi_self differs from the Hilbert pairing for {} / {}", m.render(), n.render());
            checked += 1;
        }
    }
    Ok(format!("{checked} elements"))
}

/// Both consistency checks pass on valid fixtures and detect a single corrupted entry.
pub fn consistency(trials: usize, seed: u64) -> Outcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut clean, mut caught) = (0, 0);
    for _ in 0..trials {
        // Hermitian: translating psi0.
        let fx = random_conjugate(&mut rng);
        let (atoms, t) = (&fx.atoms, &fx.table);
        let pool = ids(atoms);
        let tt = non_norm(atoms.field());
        let want_even = |r: &FormalRep| r.dim(atoms).unwrap().is_multiple_of(2);
        if let (Some(m), Some(n)) = (
            random_rep_where(&mut rng, atoms, &pool, Duality::ConjSymplectic, want_even),
            random_rep_where(&mut rng, atoms, &pool, Duality::ConjOrthogonal, odd(atoms)),
        ) {
            let report = hermitian_psi_change_check(&m, &n, fx.psi(), tt, t, atoms).map_err(|e| e.to_string())?;
            ensure!(report.is_consistent(), "hermitian check fails on a valid table: {:?}", report.mismatches);
            clean += 1;
            // Corrupt eps(X (x) Y, psi0^t) for a basis atom X of M and an atom Y of odd multiplicity in N.
            let g = component_group(&m, atoms, false).unwrap();
            let y = n.summands().iter().find(|(_, k)| k % 2 == 1).map(|(id, _)| id.clone());
            if let (Some(x), Some(y)) = (g.basis().first().map(|b| b.atom.clone()), y) {
                let mut bad = t.clone();
                let v = t.pair_value(&x, &y, &fx.psi().translate(tt), atoms).unwrap();
                bad.set_pair(&x, &y, &fx.psi().translate(tt), v * Sign::Minus);
                ensure!(!validate_epsilon(&bad, atoms).is_valid(), "corruption not visible to the validator");
                let report = hermitian_psi_change_check(&m, &n, fx.psi(), tt, &bad, atoms).map_err(|e| e.to_string())?;
                ensure!(!report.is_consistent(), "hermitian check misses a corrupted entry");
                caught += 1;
            }
        }

        // Metaplectic: conjugating by every square class.
        let field = random_selfdual_field(&mut rng);
        let fx = quadratic_family(&mut rng, field);
        let (atoms, t) = (&fx.atoms, &fx.table);
        let all = ids(atoms);
        let unit = atoms.iter().find(|a| a.dim == 1 && a.det.unwrap().is_trivial()).unwrap().id.clone();
        let trivial_odd = |r: &FormalRep| r.dim(atoms).unwrap() % 2 == 1 && r.det(atoms).unwrap().is_trivial();
        let m = random_rep(&mut rng, atoms, &all, Duality::Symplectic, 2);
        let Some(n) = random_rep_where(&mut rng, atoms, &all, Duality::Orthogonal, trivial_odd) else { continue };
        for c in atoms.field().classes().elements() {
            let report = metaplectic_psi_prop_check(&m, &n, c, &unit, t, atoms).map_err(|e| e.to_string())?;
            ensure!(report.is_consistent(), "metaplectic check fails on a valid table: {:?}", report.mismatches);
            clean += 1;
        }
        let g = component_group(&m, atoms, false).unwrap();
        let c = atoms.field().classes().elements().find(|c| !c.is_identity()).unwrap();
        if let Some(x) = g.basis().first().map(|b| b.atom.clone()) {
            let mut corrupted = AtomSet::empty(atoms.field().clone());
            for atom in atoms.iter() {
                let mut atom = atom.clone();
                if atom.id == x {
                    let v = atom.eps_self[fx.psi()];
                    atom.eps_self.insert(fx.psi().clone(), v * Sign::Minus);
                }
                corrupted.insert(atom).unwrap();
            }
            let report = metaplectic_psi_prop_check(&m, &n, c, &unit, t, &corrupted).map_err(|e| e.to_string())?;
            ensure!(!report.is_consistent(), "metaplectic check misses a corrupted root number");
            caught += 1;
        }
    }
    Ok(format!("{clean} clean reports, {caught} corruptions caught"))
}

/// All unramified `(pairs, m, n)` with `m + n + 2 |pairs| <= max_dim`.
pub fn unramified_shapes(max_dim: u64) -> Vec<UnramifiedRep> {
    let eigen = [num_rational::Rational64::new(2, 1), num_rational::Rational64::new(-3, 2), num_rational::Rational64::new(5, 1), num_rational::Rational64::new(7, 3)];
    let mut out = Vec::new();
    for p in 0..=(max_dim / 2) as usize {
        for m in 0..=max_dim {
            for n in 0..=max_dim {
                if 2 * p as u64 + m + n <= max_dim {
                    out.push(UnramifiedRep { pairs: eigen[..p].to_vec(), m, n });
                }
            }
        }
    }
    out
}

fn unramified_fields() -> Vec<LocalFieldModel> {
    let mut v = Vec::new();
    for q in [1, 3] {
        let k = LocalFieldModel::padic_odd(q).unwrap();
        v.push(k.clone());
        v.push(k.with_quadratic_extension(Ramification::Inert).unwrap());
    }
    v
}

/// The closed-form duality options and component groups, and trivial distinguished characters.
pub fn unramified_prop(max_dim: u64) -> Outcome {
    let mut count = 0;
    for field in unramified_fields() {
        let conj = field.omega().is_some();
        for u in unramified_shapes(max_dim) {
            let got = unramified_classify(&u, &field).map_err(|e| e.to_string())?;
            let (m, n) = (u.m, u.n);
            let z2_if = |b: bool| if b { "Z/2" } else { "1" };
            let expected: Vec<(Duality, &str)> = if conj {
                let mut e = vec![];
                if m % 2 == 0 {
                    e.push((Duality::ConjOrthogonal, z2_if(n > 0)));
                }
                if n % 2 == 0 {
                    e.push((Duality::ConjSymplectic, z2_if(m > 0)));
                }
                e
            } else {
                let mut e = vec![(Duality::Orthogonal, z2_if(m > 0 && n > 0))];
                if m % 2 == 0 && n % 2 == 0 {
                    e.push((Duality::Symplectic, "1"));
                }
                e
            };
            let got_s: Vec<(Duality, String)> = got.iter().map(|(d, g)| (*d, g.to_string())).collect();
            let exp_s: Vec<(Duality, String)> = expected.iter().map(|(d, g)| (*d, g.to_string())).collect();
            ensure!(got_s == exp_s, "{u:?} over {field}: got {got_s:?}, expected {exp_s:?}");
            count += 1;
        }
    }
    unramified_distinguished(max_dim)?;
    Ok(format!("{count} shapes"))
}

fn unramified_distinguished(max_dim: u64) -> Result<(), String> {
    let shapes = unramified_shapes(max_dim);
    let k = LocalFieldModel::padic_odd(3).unwrap();
    let e = k.clone().with_quadratic_extension(Ramification::Inert).unwrap();
    for u in &shapes {
        for v in &shapes {
            check_pair(u, v, &k)?;
            check_pair(u, v, &e)?;
        }
    }
    Ok(())
}

fn check_pair(u: &UnramifiedRep, v: &UnramifiedRep, field: &LocalFieldModel) -> Result<(), String> {
    // Build on the union of eigenvalues so both parameters share one atom set.
    let mut pairs = u.pairs.clone();
    for s in &v.pairs {
        if !pairs.contains(s) {
            pairs.push(*s);
        }
    }
    let fx = unramified_build(&UnramifiedRep { pairs, m: 0, n: 0 }, field).map_err(|e| e.to_string())?;
    let rep = |w: &UnramifiedRep| {
        let mut r = FormalRep::new(None);
        for s in &w.pairs {
            r.add(&format!("C({s})"), 1);
            r.add(&format!("C({})", s.recip()), 1);
        }
        r.add("C(-1)", w.m);
        r.add("C(1)", w.n);
        r
    };
    let (mu, nu) = (rep(u), rep(v));
    let psi = fx.table.base_psi().clone();
    let conj = field.omega().is_some();
    let dim = |w: &UnramifiedRep| 2 * w.pairs.len() as u64 + w.m + w.n;
    let cases: Vec<(Case, Duality, Duality)> = if conj {
        vec![
            (Case::HermitianBessel, Duality::ConjSymplectic, Duality::ConjOrthogonal),
            (Case::SkewHermitianOdd, Duality::ConjOrthogonal, Duality::ConjOrthogonal),
            (Case::SkewHermitianEven, Duality::ConjSymplectic, Duality::ConjSymplectic),
        ]
    } else {
        vec![
            (Case::OrthogonalBessel, Duality::Symplectic, Duality::Orthogonal),
            (Case::SymplecticMetaplectic, Duality::Symplectic, Duality::Orthogonal),
        ]
    };
    for (case, dm, dn) in cases {
        let m = mu.clone().declared_as(dm);
        let n = nu.clone().declared_as(dn);
        let metaplectic = case == Case::SymplecticMetaplectic;
        let ok = |r: &FormalRep, meta: bool| classify(r, field, &fx.atoms, meta, None).is_ok();
        if !ok(&m, metaplectic) || !ok(&n, false) {
            continue;
        }
        let shape_ok = match case {
            Case::OrthogonalBessel => dim(v) % 2 == 0,
            Case::SymplecticMetaplectic => dim(v) % 2 == 1,
            Case::HermitianBessel => dim(u) % 2 == 0 && dim(v) % 2 == 1,
            Case::SkewHermitianOdd => dim(u) % 2 == 1 && dim(v) % 2 == 1,
            Case::SkewHermitianEven => dim(u) % 2 == 0 && dim(v) % 2 == 0,
        };
        if !shape_ok || (case.is_skew() && (m.is_empty() || n.is_empty())) {
            continue;
        }
        let mut desc = CaseDescriptor::new(case, psi.clone());
        if matches!(case, Case::HermitianBessel | Case::SkewHermitianOdd) {
            desc.psi0 = Some(psi.clone());
        }
        if case.is_skew() {
            desc.mu = Some("C(-1)".into());
        }
        let chi = match distinguished(&desc, &m, &n, &fx.table, &fx.atoms) {
            Ok(chi) => chi,
            Err(e) => return Err(format!("{case} on {} / {}: {e}", m.render(), n.render())),
        };
        ensure!(chi.is_trivial(), "{case}: distinguished character {chi} on unramified {} / {}", m.render(), n.render());
    }
    Ok(())
}

/// `classify` on built unramified parameters agrees with the closed form, and odd orthogonal
/// parameters with nontrivial determinant are rejected.
pub fn classification_round_trip(max_dim: u64) -> Outcome {
    let mut count = 0;
    for field in unramified_fields() {
        let candidates: Vec<Duality> = if field.omega().is_some() {
            vec![Duality::ConjOrthogonal, Duality::ConjSymplectic]
        } else {
            vec![Duality::Orthogonal, Duality::Symplectic]
        };
        for u in unramified_shapes(max_dim) {
            let fx = unramified_build(&u, &field).map_err(|e| e.to_string())?;
            let options = unramified_classify(&u, &field).map_err(|e| e.to_string())?;
            for d in &candidates {
                let rep = fx.rep.clone().declared_as(*d);
                let built = classify(&rep, &field, &fx.atoms, false, None);
                let expected = options.iter().find(|(o, _)| o == d);
                let dim = rep.dim(&fx.atoms).unwrap();
                let odd_orth_bad = *d == Duality::Orthogonal && dim % 2 == 1 && !rep.det(&fx.atoms).unwrap().is_trivial();
                let parity_bad = match d {
                    Duality::ConjOrthogonal => dim % 2 == 0,
                    Duality::ConjSymplectic => dim % 2 == 1,
                    _ => false,
                };
                match (expected, built) {
                    (Some((_, group)), Ok(_)) => {
                        let plus = *d == Duality::Orthogonal;
                        let g: ComponentGroup = component_group(&rep, &fx.atoms, plus).map_err(|e| e.to_string())?;
                        ensure!(g.to_string() == group.to_string(), "{u:?} {d}: component group {g} vs {group}");
                    }
                    (Some(_), Err(e)) => {
                        // A legal duality for a representation no group row accepts.
                        ensure!(odd_orth_bad || parity_bad, "{u:?} {d}: allowed but classify fails: {e}");
                    }
                    (None, Ok(g)) => return Err(format!("{u:?} {d}: not allowed but classified as {g}")),
                    (None, Err(_)) => {}
                }
                if odd_orth_bad {
                    ensure!(matches!(classify(&rep, &field, &fx.atoms, false, None), Err(Error::Classification(_))), "odd orthogonal with nontrivial det accepted");
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} classifications"))
}

/// The coherence verdict is the parity of `-1` entries; flipping one entry toggles it.
pub fn coherence_parity(trials: usize, seed: u64) -> Outcome {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let len = rng.random_range(0..=20);
        let mut signs: Vec<Sign> = (0..len).map(|_| sign(&mut rng)).collect();
        let labels: Vec<String> = (0..len).map(|i| format!("v{i}")).collect();
        let verdict = |s: &[Sign]| coherence(labels.iter().map(String::as_str).zip(s.iter().copied()));
        let minus = signs.iter().filter(|s| s.is_minus()).count();
        let c = verdict(&signs);
        ensure!(c.coherent == (minus % 2 == 0), "verdict disagrees with parity");
        ensure!(c.derivative_case == !c.coherent, "derivative flag mismatch");
        if len > 0 {
            let i = rng.random_range(0..len);
            signs[i] *= Sign::Minus;
            ensure!(verdict(&signs).coherent != c.coherent, "single flip did not toggle");
        }
    }
    Ok(format!("{trials} vectors"))
}

/// Each axiom fixture fails exactly its axiom.
pub fn axiom_detector() -> Outcome {
    for axiom in [Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4, Axiom::A5] {
        let fx = axiom_fixture(axiom);
        let found = validate_epsilon(&fx.table, &fx.atoms).axioms();
        ensure!(found.len() == 1 && found.contains(&axiom), "{axiom} fixture reports {found:?}");
    }
    Ok("A1-A5 isolated".into())
}
