pub mod builders;
pub mod category;
pub mod cli;
pub mod functor;
pub mod galois;
pub mod logic;
pub mod nno;
pub mod universal;
