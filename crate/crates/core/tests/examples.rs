//! Every example must run to completion.

#[allow(dead_code)]
mod field_arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/field_arithmetic.rs"));
}

#[allow(dead_code)]
mod skew_multiplication {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/skew_multiplication.rs"));
}

#[allow(dead_code)]
mod lclm {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lclm.rs"));
}

#[allow(dead_code)]
mod evaluation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/evaluation.rs"));
}

#[allow(dead_code)]
mod min_poly_tree {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/min_poly_tree.rs"));
}

#[allow(dead_code)]
mod knh_baseline {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/knh_baseline.rs"));
}

#[allow(dead_code)]
mod fast_interpolation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fast_interpolation.rs"));
}

#[allow(dead_code)]
mod weak_popov {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/weak_popov.rs"));
}

#[allow(dead_code)]
mod gabidulin_decoding {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gabidulin_decoding.rs"));
}

#[allow(dead_code)]
mod operation_counts {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/operation_counts.rs"));
}

#[allow(dead_code)]
mod instance_json {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/instance_json.rs"));
}

#[test]
fn field_arithmetic_runs() {
    field_arithmetic::run().unwrap();
}

#[test]
fn skew_multiplication_runs() {
    skew_multiplication::run().unwrap();
}

#[test]
fn lclm_runs() {
    lclm::run().unwrap();
}

#[test]
fn evaluation_runs() {
    evaluation::run().unwrap();
}

#[test]
fn min_poly_tree_runs() {
    min_poly_tree::run().unwrap();
}

#[test]
fn knh_baseline_runs() {
    knh_baseline::run().unwrap();
}

#[test]
fn fast_interpolation_runs() {
    fast_interpolation::run().unwrap();
}

#[test]
fn weak_popov_runs() {
    weak_popov::run().unwrap();
}

#[test]
fn gabidulin_decoding_runs() {
    gabidulin_decoding::run().unwrap();
}

#[test]
fn operation_counts_runs() {
    operation_counts::run().unwrap();
}

#[test]
fn instance_json_runs() {
    instance_json::run().unwrap();
}
