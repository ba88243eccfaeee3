//! Rendered proofs of the three worked examples against checked-in files.
//! Set `FIZZLE_BLESS=1` to rewrite the files from the current renderer.

mod common;

use std::path::PathBuf;

use common::*;
use fizzle::emit::{render_proof, ProofFormat};
use fizzle::witness::Witness;

fn check(name: &str, w: &Witness) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (format, ext) in [(ProofFormat::Text, "txt"), (ProofFormat::Latex, "tex")] {
        let rendered = render_proof(w, format, true).unwrap().render();
        let path = dir.join(format!("{name}.{ext}"));
        if std::env::var_os("FIZZLE_BLESS").is_some() {
            std::fs::write(&path, &rendered).unwrap();
            continue;
        }
        let golden = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(rendered, golden, "{} differs from the renderer", path.display());
    }
}

#[test]
fn polynomial_golden() {
    check("polynomial", &worked_polynomial());
}

#[test]
fn rational_golden() {
    check("rational", &worked_rational());
}

#[test]
fn infinity_golden() {
    check("infinity", &worked_infinity());
}
