// placeholder until the harness and transforms land
int main() { return 0; }
