pub mod catgen;
pub mod exactla;
pub mod fincat;
pub mod freeness;
pub mod catalg;
pub mod gmodules;
pub mod homalg;
pub mod cli;
