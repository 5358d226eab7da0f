pub mod algebra;
pub mod cli;
pub mod equation;
pub mod recursion;
pub mod simulator;
pub mod waves;
