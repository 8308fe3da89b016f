fn main() { unimplemented!() }
