pub mod bd;
pub mod exec;
pub mod formality;
pub mod graded;
pub mod graphs;
pub mod linalg;
pub mod linfty;
pub mod random;
pub mod report;
pub mod samples;
