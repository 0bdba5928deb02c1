fn main() { println!("era"); }
