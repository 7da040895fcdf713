#include <iostream>
int main() { std::cout << "toricflip: cli not wired yet\n"; return 1; }
