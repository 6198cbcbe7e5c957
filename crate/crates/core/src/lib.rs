//! Learning-activity generation and evaluation toolkit.
//!
//! Three generation architectures (a single-prompt baseline, a sequential
//! role pipeline, and a persona-based draft/critique/merge discussion) run
//! against a provider-agnostic chat gateway, producing full transcripts and
//! cost telemetry. Generated activities are scored by an LLM judge on two
//! rubrics, and human or judge ratings feed a within-subject statistics
//! engine.

pub mod domain;
pub mod gateway;

pub use actkit_stats as stats;
