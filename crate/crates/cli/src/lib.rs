//! Library side of the command-line tool: the JSON file formats shared by
//! the commands, their golden tests, and downstream tooling.

pub mod formats;
