//! Micro-benchmarks live under `benches/`; this crate carries no library
//! code of its own.
