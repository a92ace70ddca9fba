#pragma once

#define QFC_VERSION "0.1.0"
