//! The JSON input format, version 1. Unknown fields are rejected everywhere.

use serde::Deserialize;

use vogan_core::{Error, Result};

pub const VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: u32,
    #[serde(default)]
    pub field_models: Vec<FieldModelDecl>,
    #[serde(default)]
    pub atoms: Vec<AtomSetDecl>,
    #[serde(default)]
    pub epsilon_tables: Vec<TableDecl>,
    #[serde(default)]
    pub local_parameters: Vec<LocalParameterDecl>,
    #[serde(default)]
    pub cases: Vec<CaseDecl>,
    #[serde(default)]
    pub global_parameters: Vec<GlobalParameterDecl>,
    #[serde(default)]
    pub queries: Vec<Query>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.version != VERSION {
            return Err(Error::Validation(format!("unsupported document version {}", doc.version)));
        }
        Ok(doc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKindDecl {
    Padic,
    Real,
    Complex,
    Custom,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldModelDecl {
    pub id: String,
    pub kind: FieldKindDecl,
    /// `p`-adic fields: the residue field order mod 4.
    pub q_mod_4: Option<u8>,
    /// Custom fields: generator labels, the Hilbert symbol on generators as `+1`/`-1`
    /// rows, and the class of `-1`.
    pub labels: Option<Vec<String>>,
    pub hilbert: Option<Vec<Vec<String>>>,
    pub minus_one: Option<String>,
    pub extension: Option<ExtensionDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDecl {
    /// `inert`, `ramified` or `split`.
    pub kind: String,
    pub disc: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSetDecl {
    pub id: String,
    pub field: String,
    pub atoms: Vec<AtomDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDecl {
    pub id: String,
    pub dim: u64,
    /// Set for (conjugate-)selfdual atoms.
    pub duality: Option<String>,
    /// Set for the other atoms, together with `partner`.
    pub context: Option<String>,
    pub partner: Option<String>,
    /// The determinant as the square class `d` of the character `(d, -)`.
    pub det: Option<String>,
    pub det_at_minus_one: Option<String>,
    /// `eps(X, psi)` keyed by additive character.
    #[serde(default)]
    pub eps: Vec<EpsDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsDecl {
    pub psi: String,
    pub value: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDecl {
    pub id: String,
    pub atoms: String,
    pub context: String,
    pub psi: String,
    #[serde(default)]
    pub pairs: Vec<PairDecl>,
    #[serde(default)]
    pub twists: Vec<TwistDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDecl {
    pub atoms: [String; 2],
    /// Defaults to the table's base character.
    pub psi: Option<String>,
    pub value: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistDecl {
    pub atom: String,
    /// Exactly one of `class` and `character`.
    pub class: Option<String>,
    pub character: Option<String>,
    pub image: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalParameterDecl {
    pub id: String,
    pub atoms: String,
    pub duality: String,
    /// `[atom, multiplicity]` in basis order.
    pub summands: Vec<(String, u64)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseDecl {
    pub id: String,
    pub case: String,
    pub table: String,
    pub m: String,
    pub n: String,
    pub psi: Option<String>,
    pub psi0: Option<String>,
    pub mu: Option<String>,
    pub unit: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalParameterDecl {
    pub id: String,
    pub places: Vec<PlaceDecl>,
    pub atoms: Vec<GlobalAtomDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceDecl {
    pub label: String,
    pub atoms: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalAtomDecl {
    pub id: String,
    pub dim: u64,
    pub sign: String,
    pub eps_half: String,
    /// `[place, local parameter id]`.
    #[serde(default)]
    pub local: Vec<(String, String)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "query", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Query {
    Classify {
        parameter: String,
        #[serde(default)]
        metaplectic: bool,
        disc: Option<String>,
        table: Option<String>,
    },
    ComponentGroup {
        parameter: String,
        #[serde(default)]
        plus: bool,
    },
    Distinguished {
        case: String,
    },
    CheckPsiConsistency {
        case: String,
        class: String,
    },
    CheckAxioms {
        table: String,
    },
    MetaplecticConjugate {
        parameter: String,
        table: String,
        class: String,
        character: Vec<String>,
    },
    GlobalMultiplicity {
        global: String,
        mode: Option<String>,
        /// `[place, basis values]`; unlisted places carry the trivial character.
        #[serde(default)]
        eta: Vec<(String, Vec<String>)>,
    },
    EnumerateAutomorphic {
        global: String,
        mode: Option<String>,
    },
    Coherence {
        /// `[place, sign]`.
        signs: Vec<(String, String)>,
    },
    Unramified {
        field: String,
        /// Frobenius eigenvalues `s` of the pairs `C(s) + C(1/s)`, as rationals.
        #[serde(default)]
        pairs: Vec<String>,
        m: u64,
        n: u64,
    },
}

impl Query {
    pub fn kind(&self) -> &'static str {
        match self {
            Query::Classify { .. } => "classify",
            Query::ComponentGroup { .. } => "component-group",
            Query::Distinguished { .. } => "distinguished",
            Query::CheckPsiConsistency { .. } => "check-psi-consistency",
            Query::CheckAxioms { .. } => "check-axioms",
            Query::MetaplecticConjugate { .. } => "metaplectic-conjugate",
            Query::GlobalMultiplicity { .. } => "global-multiplicity",
            Query::EnumerateAutomorphic { .. } => "enumerate-automorphic",
            Query::Coherence { .. } => "coherence",
            Query::Unramified { .. } => "unramified",
        }
    }

    pub fn target(&self) -> String {
        match self {
            Query::Classify { parameter, .. }
            | Query::ComponentGroup { parameter, .. }
            | Query::MetaplecticConjugate { parameter, .. } => parameter.clone(),
            Query::Distinguished { case } | Query::CheckPsiConsistency { case, .. } => case.clone(),
            Query::CheckAxioms { table } => table.clone(),
            Query::GlobalMultiplicity { global, .. } | Query::EnumerateAutomorphic { global, .. } => global.clone(),
            Query::Coherence { .. } => "signs".into(),
            Query::Unramified { field, .. } => field.clone(),
        }
    }
}

pub const QUERY_KINDS: [&str; 10] = [
    "classify",
    "component-group",
    "distinguished",
    "check-psi-consistency",
    "check-axioms",
    "metaplectic-conjugate",
    "global-multiplicity",
    "enumerate-automorphic",
    "coherence",
    "unramified",
];
