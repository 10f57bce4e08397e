#include <iostream>

int main() {
  std::cout << "vtr: placeholder\n";
  return 0;
}
