fn main() { print!("{}", qring::audit::default_report().unwrap()); }
