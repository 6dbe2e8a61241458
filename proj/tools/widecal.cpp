#include <cstdio>
int main() { std::puts("widecal: placeholder"); return 0; }
