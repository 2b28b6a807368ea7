//! Checks that need more than syntax: category laws, chosen structure,
//! functor laws of natural systems, generator types and proofs.

use catcoh_core::eqlogic::check_proof;

use crate::input::{CategoryDecl, CccDecl, Document, NatSysDecl, ParseError, ProofDecl, StructureDecl};

fn at(line: usize, message: String) -> ParseError {
    ParseError { line, col: 1, message }
}

pub fn category(d: &CategoryDecl) -> Result<(), ParseError> {
    d.category.validate().map_err(|e| at(d.line, format!("category `{}`: {e}", d.name)))
}

pub fn structure(doc: &Document, s: &StructureDecl) -> Result<(), ParseError> {
    let c = doc.category(&s.category).expect("resolved while parsing");
    category(c)?;
    s.structure.validate(&c.category).map_err(|e| at(s.line, format!("structure on `{}`: {e}", s.category)))
}

pub fn natsys(doc: &Document, d: &NatSysDecl) -> Result<(), ParseError> {
    category(doc.category(&d.over).expect("resolved while parsing"))?;
    d.system.validate().map_err(|e| at(d.line, format!("natural system `{}`: {e}", d.name)))
}

/// A rejected proof is located at the offending step.
pub fn proof(doc: &Document, p: &ProofDecl) -> Result<(), ParseError> {
    let t = doc.theory(&p.theory).expect("resolved while parsing");
    check_proof(&t.signature, &t.equations, &p.proof, &p.goal).map_err(|e| {
        let src = p.source.at(&e.path);
        ParseError { line: src.line, col: src.col, message: format!("proof `{}`: {e}", p.name) }
    })
}

pub fn ccc(d: &CccDecl) -> Result<(), ParseError> {
    d.signature.validate().map_err(|e| at(d.line, format!("ccc `{}`: {e}", d.name)))
}

/// Every check on every declaration, in file order within each kind.
pub fn all(doc: &Document) -> Vec<(String, Result<(), ParseError>)> {
    let mut out = Vec::new();
    for c in &doc.categories {
        out.push((format!("category {}", c.name), category(c)));
    }
    for s in &doc.structures {
        out.push((format!("structure on {}", s.category), structure(doc, s)));
    }
    for d in &doc.natsys {
        out.push((format!("natsys {}", d.name), natsys(doc, d)));
    }
    for t in &doc.theories {
        out.push((format!("signature {}", t.name), Ok(())));
    }
    for p in &doc.proofs {
        out.push((format!("proof {}", p.name), proof(doc, p)));
    }
    for d in &doc.cccs {
        out.push((format!("ccc {}", d.name), ccc(d)));
    }
    out
}
