#include <filesystem>
#include <iostream>

#include "blocklim/fixtures.hpp"
#include "blocklim/io.hpp"

using namespace blocklim;

int main(int argc, char ** argv)
{
	std::filesystem::path const dir = argc > 1 ? argv[1] : "fixtures";
	std::filesystem::create_directories(dir);
	save_model(dir / "single_block.json", fixtures::single_block(1, 2, 1, 0.3, 0.3));
	save_model(dir / "trilithon.json", fixtures::trilithon());
	save_model(dir / "trilithon_reinforced.json", fixtures::trilithon({}, 4));
	save_model(dir / "arch.json", fixtures::arch());
	save_model(dir / "arch_extrados.json", fixtures::arch_reinforced(fixtures::arch_extrados_sequence(), End::End1));
	save_model(dir / "arch_intrados.json", fixtures::arch_reinforced(fixtures::arch_intrados_sequence(), End::End2));
	std::cout << "fixtures written to " << dir << "\n";
}
