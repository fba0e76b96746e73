//! Criterion benches for `noflab`; see `benches/`.
