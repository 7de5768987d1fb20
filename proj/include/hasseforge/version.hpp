#ifndef HASSEFORGE_VERSION_HPP
#define HASSEFORGE_VERSION_HPP

#define HASSEFORGE_VERSION "1.0.0"

namespace hf {
inline const char* version() { return HASSEFORGE_VERSION; }
}

#endif
