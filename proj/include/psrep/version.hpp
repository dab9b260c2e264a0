#pragma once

#define PSREP_VERSION "1.0.0"
