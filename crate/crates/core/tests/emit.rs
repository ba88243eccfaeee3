mod common;

use common::*;
use fizzle::emit::*;
use fizzle::witness::{w_identity, Witness};

#[test]
fn every_constructor_renders_in_both_formats() {
    for (name, w) in constructor_matrix() {
        for format in [ProofFormat::Text, ProofFormat::Latex] {
            let doc = render_proof(&w, format, true).unwrap_or_else(|e| panic!("{name}: {e}"));
            let chain = doc.section(SectionKind::BoundChain).unwrap();
            assert_eq!(chain.lines.len(), w.derivation.node_count(), "{name}");
            let choice = &doc.section(SectionKind::DeltaChoice).unwrap().lines[0];
            let printed = match format {
                ProofFormat::Text => w.delta.to_string(),
                ProofFormat::Latex => w.delta.latex(),
            };
            assert!(choice.contains(&printed), "{name}: {choice}");
            if format == ProofFormat::Text {
                assert!(doc.render().is_ascii(), "{name}");
            } else {
                let s = doc.render();
                assert!(s.starts_with("\\documentclass{article}"), "{name}");
                assert_eq!(s.matches('$').count() % 2, 0, "{name}: unbalanced math");
            }
        }
    }
}

#[test]
fn identity_proof() {
    let doc = render_proof(&w_identity(), ProofFormat::Text, true).unwrap();
    let text = doc.render();
    assert!(text.contains("Choose delta = eps."));
    let kinds: Vec<SectionKind> = doc.sections.iter().map(|s| s.kind).collect();
    assert_eq!(
        kinds,
        vec![
            SectionKind::Claim,
            SectionKind::FixEps,
            SectionKind::DeltaChoice,
            SectionKind::BoundChain,
            SectionKind::Conclusion
        ]
    );
}

#[test]
fn worked_polynomial_text_lines() {
    let text = render_proof(&worked_polynomial(), ProofFormat::Text, true).unwrap().render();
    assert!(text.lines().any(|l| l.contains("t^2 + 5t")));
    assert!(text.lines().any(|l| l == "Choose delta = min{1, eps/6}."));
}

#[test]
fn infinity_latex_uses_generated_delta() {
    let s = render_proof(&worked_infinity(), ProofFormat::Latex, true).unwrap().render();
    assert!(s.contains("\\min"));
    assert!(s.contains("\\frac{3}{8}"));
    assert!(!s.contains("\\frac{9\\varepsilon}{14}"));
}

#[test]
fn errata_flag_controls_notes() {
    for (name, w) in constructor_matrix() {
        let off = render_proof(&w, ProofFormat::Text, false).unwrap();
        assert!(off.erratum_footnotes.is_empty(), "{name}");
        assert!(!off.render().contains("Notes."), "{name}");
    }
    let on = render_proof(&worked_rational(), ProofFormat::Text, true).unwrap();
    assert_eq!(on.erratum_footnotes.len(), 2);
}

fn roundtrip(name: &str, w: &Witness) {
    let json = serialize_witness(w);
    let back = deserialize_witness(&json).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert_eq!(&back, w, "{name}");
    assert_eq!(back.derivation.node_count(), w.derivation.node_count(), "{name}");
    assert_eq!(serialize_witness(&back), json, "{name}");
}

#[test]
fn serialization_round_trips_on_the_matrix() {
    for (name, w) in constructor_matrix() {
        roundtrip(name, &w);
    }
    for (name, w) in random_composites(20, 11) {
        roundtrip(&name, &w);
    }
}

#[test]
fn serialized_shape() {
    let json = serialize_witness(&worked_infinity());
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], "fizzle-witness/1");
    assert_eq!(v["claim"]["function"], "(2*x+1)/(3*x-4)");
    assert_eq!(v["claim"]["center"], "inf");
    assert_eq!(v["claim"]["limit"], "2/3");
    assert_eq!(v["claim"]["side"], "right_only");
    assert_eq!(v["delta"]["node"], "min");
    assert_eq!(v["derivation"]["rule"], "infinity_transform");
}

#[test]
fn schema_version_is_enforced() {
    let json = serialize_witness(&worked_polynomial()).replace("fizzle-witness/1", "fizzle-witness/0");
    assert!(matches!(deserialize_witness(&json), Err(EmitError::SchemaMismatch { .. })));
    assert!(matches!(deserialize_witness("not json"), Err(EmitError::Malformed(_))));
}
