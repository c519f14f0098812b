//! End-to-end acceptance checks for `special-monoid`; see `tests/acceptance.rs`.
