#ifndef JACOBILAB_VERSION_HPP
#define JACOBILAB_VERSION_HPP

namespace jacobilab {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
