#include <exception>
#include <iostream>

#include "gravistoch/commands.hpp"
#include "gravistoch/config.hpp"
#include "gravistoch/errors.hpp"

int main(int argc, char** argv) {
    using namespace gravistoch;
    try {
        const auto parsed = cli::parse_config(argc, argv);
        if (parsed.exit_now) return parsed.exit_code;
        return cli::run(parsed.config);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const guard_error& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
