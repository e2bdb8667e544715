#include <cstdio>

int main() {
    std::puts("covertsim: placeholder");
    return 0;
}
