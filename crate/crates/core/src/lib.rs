pub mod binom;
pub mod gf4;
pub mod pauli;
pub mod krawtchouk;
pub mod poly;
pub mod enumerators;
pub mod example;
pub mod bounds;
pub mod cli;
