#ifndef EMDEN_VERSION_HPP
#define EMDEN_VERSION_HPP

namespace emden {

inline constexpr const char* version_string = "0.1.0";

}

#endif
