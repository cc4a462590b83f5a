/* modechange.h -- definitions for file mode manipulation */

struct mode_change
{
  char op;
  char flag;
  mode_t affected;
  mode_t value;
  mode_t mentioned;
};

struct mode_change *mode_compile (char const *mode_string);
mode_t mode_adjust (mode_t oldmode, bool dir, mode_t umask_value,
                    struct mode_change const *changes, mode_t *pmode_bits);
void describe_change (char const *file, mode_t old_mode, mode_t new_mode, bool ok);
