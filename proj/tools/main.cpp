#include <cstdio>

int main() {
    std::puts("cpkit: under construction");
    return 0;
}
