#include <iostream>

int main() {
    std::cout << "arrcert: not wired up yet\n";
    return 0;
}
