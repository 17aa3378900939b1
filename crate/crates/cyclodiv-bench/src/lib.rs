//! Empty by design: this crate exists to host the `benches/` targets.
