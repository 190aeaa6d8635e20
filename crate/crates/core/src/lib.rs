pub mod bondal;
pub mod cli;
pub mod corpus;
pub mod derived;
pub mod glue;
pub mod io;
pub mod linalg;
pub mod modules;
pub mod path_algebra;
pub mod yoneda;
