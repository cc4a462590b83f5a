#ifndef REMOVE_H
# define REMOVE_H

enum RM_status
{
  RM_OK = 2,
  RM_USER_DECLINED,
  RM_ERROR
};

struct rm_options
{
  int ignore_missing_files;
  int interactive;
  int recursive;
  int verbose;
};

void rm_option_init (struct rm_options *x);
enum RM_status rm (size_t n_files, char const *const *file, struct rm_options const *x);

#endif
