#include "pfaffian.hpp"

// Templated; instantiated in headers. Kept as a translation unit anchor.
namespace coxlink {}
