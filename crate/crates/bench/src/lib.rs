//! Benchmark helpers (fixtures shared by the criterion benches).
