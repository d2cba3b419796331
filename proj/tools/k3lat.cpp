#include <k3lat/cli.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = k3lat::run(args);
    std::cout << result.text;
    return result.exit_code;
}
