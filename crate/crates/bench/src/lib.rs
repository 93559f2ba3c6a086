//! Shared fixtures for the benchmarks.

use mqg_core::generators::{generate, MdgpKind, MdgpSpec};
use mqg_core::MultivariateSeries;

pub const FIXTURE_SEED: u64 = 0x5EED;

/// A deterministic series of the given model and length.
pub fn fixture(kind: MdgpKind, len: usize) -> MultivariateSeries {
    generate(&MdgpSpec::new(kind, len, FIXTURE_SEED)).expect("fixture parameters are valid")
}
