#include <cstdio>
int main(int argc, char** argv){ (void)argc; (void)argv; std::puts("spectral-bounds: stub"); return 0; }
